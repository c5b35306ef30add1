use crate::C64;
use std::f64::consts::PI;

/// Splits `z = n + r` with `n` the nearest integer to `Re z`, so that
/// `sin πz = (−1)ⁿ sin πr` is computed without losing the zero at integers.
fn reduce(z: C64) -> (f64, C64) {
    let n = z.re.round();
    (n, C64::new(z.re - n, z.im))
}

fn parity(n: f64) -> f64 {
    if (n % 2.0) == 0.0 {
        1.0
    } else {
        -1.0
    }
}

pub fn sin_pi(z: C64) -> C64 {
    let (n, r) = reduce(z);
    let (a, b) = (PI * r.re, PI * r.im);
    C64::new(a.sin() * b.cosh(), a.cos() * b.sinh()) * parity(n)
}

/// `cos πz = sin π(z + 1/2)`, exact zero at half-integers.
pub fn cos_pi(z: C64) -> C64 {
    sin_pi(C64::new(z.re + 0.5, z.im))
}

/// A logarithm of `sin πz` (any branch), finite for large `|Im z|` where
/// `sin πz` itself overflows.
pub fn ln_sin_pi(z: C64) -> C64 {
    let (n, r) = reduce(z);
    let sign = if parity(n) < 0.0 { C64::new(0.0, PI) } else { C64::new(0.0, 0.0) };
    let base = if r.im.abs() < 20.0 {
        sin_pi(r).ln()
    } else if r.im > 0.0 {
        // sin πr = e^{−iπr}(e^{2iπr} − 1)/(2i)
        let i_pi_r = C64::new(0.0, PI) * r;
        -i_pi_r + ((2.0 * i_pi_r).exp() - 1.0).ln() - C64::new(0.0, 2.0).ln()
    } else {
        let i_pi_r = C64::new(0.0, PI) * r;
        i_pi_r + (1.0 - (-2.0 * i_pi_r).exp()).ln() - C64::new(0.0, 2.0).ln()
    };
    base + sign
}

/// `cosh πz` through `cos π(iz)`.
pub fn cosh_pi(z: C64) -> C64 {
    cos_pi(C64::new(-z.im, z.re))
}
