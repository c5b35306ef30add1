use super::trig::{ln_sin_pi, sin_pi};
use crate::error::{finite, Error, Result};
use crate::C64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// Stirling coefficients B₂ₖ/(2k(2k−1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const MAX_MODULUS: f64 = 200.0;

pub fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn ln_gamma_lanczos(z: C64) -> C64 {
    let zm = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    HALF_LN_2PI + (zm + 0.5) * t.ln() - t + acc.ln()
}

fn ln_gamma_stirling(z: C64) -> C64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut pow = inv;
    for &c in STIRLING.iter() {
        series += c * pow;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// A logarithm of Γ(z) (not necessarily the principal branch of log Γ;
/// only `exp` of sums of these values is meaningful). Infinite at poles.
pub fn ln_gamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        return C64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(1.0 - z);
    }
    if z.norm() >= 20.0 {
        ln_gamma_stirling(z)
    } else {
        ln_gamma_lanczos(z)
    }
}

pub fn complex_gamma(z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("gamma argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.norm() > MAX_MODULUS {
        return Err(Error::Range(format!("|z| = {} exceeds the validated range {MAX_MODULUS}", z.norm())));
    }
    finite(ln_gamma(z).exp(), "Γ(z)")
}

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
pub fn reciprocal_gamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 && z.norm() < 50.0 {
        // sin(πz)Γ(1−z)/π keeps the neighbourhood of each zero smooth.
        return sin_pi(z) * (ln_gamma(1.0 - z)).exp() / PI;
    }
    (-ln_gamma(z)).exp()
}

/// Γ[numerators / denominators].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GammaRatio {
    pub numerators: Vec<C64>,
    pub denominators: Vec<C64>,
}

impl GammaRatio {
    pub fn new(numerators: &[C64], denominators: &[C64]) -> Self {
        Self { numerators: numerators.to_vec(), denominators: denominators.to_vec() }
    }

    pub fn eval(&self) -> Result<C64> {
        gamma_ratio(&self.numerators, &self.denominators)
    }
}

/// Γ[num / den]. Denominator poles contribute an exact zero.
pub fn gamma_ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    if let Some(p) = num.iter().find(|z| is_nonpositive_integer(**z)) {
        return Err(Error::Pole(format!("numerator argument {p} is a pole of Γ")));
    }
    if den.iter().any(|z| is_nonpositive_integer(*z)) {
        return Ok(C64::new(0.0, 0.0));
    }
    let large = num.iter().chain(den.iter()).any(|z| z.norm() > 20.0);
    let value = if large {
        let ln: C64 = num.iter().map(|z| ln_gamma(*z)).sum::<C64>() - den.iter().map(|z| ln_gamma(*z)).sum::<C64>();
        ln.exp()
    } else {
        let mut v = C64::new(1.0, 0.0);
        for z in num {
            v *= ln_gamma(*z).exp();
        }
        for z in den {
            v *= reciprocal_gamma(*z);
        }
        v
    };
    finite(value, "Γ-ratio")
}

/// Pochhammer symbol with the two-sided definition:
/// (a)ₙ = a(a+1)⋯(a+n−1) for n ≥ 0 and 1/((a−1)(a−2)⋯(a+n)) for n < 0.
pub fn pochhammer(a: C64, n: i64) -> Result<C64> {
    let mut v = C64::new(1.0, 0.0);
    if n >= 0 {
        for j in 0..n {
            v *= a + j as f64;
        }
        return Ok(v);
    }
    for j in 1..=(-n) {
        let f = a - j as f64;
        if f == C64::new(0.0, 0.0) {
            return Err(Error::Pole(format!("({a})_{n} has a zero factor a−{j}")));
        }
        v /= f;
    }
    Ok(v)
}
