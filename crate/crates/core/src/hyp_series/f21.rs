use super::{SeriesStatus, SeriesValue};
use crate::error::{Error, Result};
use crate::special_core::{gamma_ratio, is_nonpositive_integer};
use crate::C64;

const REGION: f64 = 0.75;
const TOL: f64 = 1e-17;
const MAX_TERMS: usize = 20_000;
const EPS: f64 = f64::EPSILON;

/// A ₂F₁ argument together with `1 − z`, which callers often know in a
/// cancellation-free form (for the Ψ arguments `1 − u = 1/(1/2 − ix)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypArg {
    pub z: C64,
    pub one_minus_z: C64,
}

impl HypArg {
    pub fn new(z: C64) -> Self {
        Self { z, one_minus_z: 1.0 - z }
    }

    pub fn with_complement(z: C64, one_minus_z: C64) -> Self {
        Self { z, one_minus_z }
    }

    fn complement(self) -> Self {
        Self { z: self.one_minus_z, one_minus_z: self.z }
    }

    /// `z/(z − 1)` and its complement `1/(1 − z)`.
    fn pfaff(self) -> Self {
        let inv = 1.0 / self.one_minus_z;
        Self { z: -self.z * inv, one_minus_z: inv }
    }
}

pub fn gauss_2f1(a: C64, b: C64, c: C64, z: C64) -> Result<SeriesValue> {
    gauss_2f1_arg(a, b, c, HypArg::new(z))
}

pub fn gauss_2f1_arg(a: C64, b: C64, c: C64, arg: HypArg) -> Result<SeriesValue> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(format!("₂F₁ parameter {name} = {v}")));
        }
    }
    if !(arg.z.re.is_finite() && arg.z.im.is_finite()) {
        return Err(Error::NonFinite(format!("₂F₁ argument {}", arg.z)));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::ParameterPole(format!("c = {} is a nonpositive integer", c.re)));
    }
    if let Some(m) = terminating_degree(a).into_iter().chain(terminating_degree(b)).min() {
        return Ok(polynomial(a, b, c, arg.z, m));
    }
    let z = arg.z;
    if z.norm() <= REGION {
        return Ok(direct(a, b, c, z));
    }
    if arg.one_minus_z.norm() <= REGION {
        let d = c - a - b;
        let logarithmic = d.im.abs() < 1e-9 && (d.re - d.re.round()).abs() < 1e-9;
        if logarithmic && z.norm() < 1.0 {
            // Inside the disc the ODE continuation needs no connection formula.
            return taylor_continuation(a, b, c, z);
        }
        return connection(a, b, c, arg);
    }
    let pf = arg.pfaff();
    if pf.z.norm() <= REGION {
        // Pfaff: F(a,b;c;z) = (1−z)^{−a} F(a, c−b; c; z/(z−1)).
        let inner = direct(a, c - b, c, pf.z);
        return Ok(inner.scaled((-a * arg.one_minus_z.ln()).exp()));
    }
    if z.norm() <= 1.0 + 1e-12 {
        return taylor_continuation(a, b, c, z);
    }
    Err(Error::Range(format!("₂F₁ argument {z} lies outside the validated region")))
}

fn terminating_degree(a: C64) -> Option<usize> {
    if is_nonpositive_integer(a) && -a.re < MAX_TERMS as f64 {
        Some((-a.re) as usize)
    } else {
        None
    }
}

fn polynomial(a: C64, b: C64, c: C64, z: C64, degree: usize) -> SeriesValue {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    for n in 0..degree {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        abs_sum += term.norm();
    }
    SeriesValue::new(sum, 4.0 * EPS * abs_sum, degree + 1, SeriesStatus::Converged)
}

/// Maclaurin series, stopped after three consecutive negligible terms.
fn direct(a: C64, b: C64, c: C64, z: C64) -> SeriesValue {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        abs_sum += term.norm();
        if term.norm() <= TOL * sum.norm() {
            small += 1;
            if small == 3 {
                return SeriesValue::new(sum, 4.0 * EPS * abs_sum + term.norm(), n + 2, SeriesStatus::Converged);
            }
        } else {
            small = 0;
        }
    }
    SeriesValue::new(sum, 4.0 * EPS * abs_sum + term.norm(), MAX_TERMS + 1, SeriesStatus::Truncated)
}

/// z ↦ 1 − z connection, valid when c − a − b is not an integer.
fn connection(a: C64, b: C64, c: C64, arg: HypArg) -> Result<SeriesValue> {
    let d = c - a - b;
    if d.im.abs() < 1e-9 && (d.re - d.re.round()).abs() < 1e-9 {
        return Err(Error::LogarithmicCase(format!("c − a − b = {d} is an integer")));
    }
    let w = arg.complement().z;
    let first = gamma_ratio(&[c, d], &[c - a, c - b])?;
    let second = gamma_ratio(&[c, -d], &[a, b])? * (d * w.ln()).exp();
    let f1 = direct(a, b, 1.0 - d, w);
    let f2 = direct(c - a, c - b, 1.0 + d, w);
    let mut out = SeriesValue::combine(&[(first, f1), (second, f2)]);
    // The Γ prefactors can be large while the result is not.
    out.abs_error_estimate += 8.0 * EPS * (first.norm() * f1.value.norm() + second.norm() * f2.value.norm());
    Ok(out)
}

/// Taylor coefficients of the solution of z(1−z)F″ + [c−(a+b+1)z]F′ − abF = 0
/// about `z0`, summed at displacement `h` together with the derivative.
fn taylor_step(a: C64, b: C64, c: C64, z0: C64, f: C64, fp: C64, h: C64) -> (C64, C64) {
    let q = z0 * (1.0 - z0);
    let lin = 1.0 - 2.0 * z0;
    let lead = c - (a + b + 1.0) * z0;
    let (mut fk, mut fk1) = (f, fp);
    let mut hk = C64::new(1.0, 0.0);
    let mut value = fk;
    let mut deriv = C64::new(0.0, 0.0);
    let mut small = 0;
    for k in 0..400usize {
        let kf = k as f64;
        // Add the (k+1)-th term before advancing the recurrence.
        deriv += (kf + 1.0) * fk1 * hk;
        hk *= h;
        value += fk1 * hk;
        let fk2 = (-(lin * kf + lead) * (kf + 1.0) * fk1 + (kf + a) * (kf + b) * fk) / (q * (kf + 1.0) * (kf + 2.0));
        if (fk1 * hk).norm() <= 1e-18 * value.norm() && ((kf + 1.0) * fk1 * hk).norm() <= 1e-18 * deriv.norm().max(1e-300) {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
        fk = fk1;
        fk1 = fk2;
    }
    (value, deriv)
}

/// Continues F from a direct-series seed at radius 1/2 along the ray to `z`,
/// each step at most 0.45 of the distance to the nearer singular point.
fn taylor_continuation(a: C64, b: C64, c: C64, z: C64) -> Result<SeriesValue> {
    let mut z0 = 0.5 * z / z.norm();
    let seed = direct(a, b, c, z0);
    let dseed = direct(a + 1.0, b + 1.0, c + 1.0, z0);
    let mut f = seed.value;
    let mut fp = a * b / c * dseed.value;
    let mut steps = 0;
    while (z - z0).norm() > 0.0 {
        let radius = 0.45 * z0.norm().min((1.0 - z0).norm());
        let remaining = z - z0;
        let h = if remaining.norm() <= radius { remaining } else { remaining * (radius / remaining.norm()) };
        let (nf, nfp) = taylor_step(a, b, c, z0, f, fp, h);
        f = nf;
        fp = nfp;
        z0 += h;
        steps += 1;
        if steps > 200 {
            return Err(Error::Range(format!("Taylor continuation to {z} did not terminate")));
        }
    }
    let err = seed.abs_error_estimate + 64.0 * EPS * (steps as f64 + 1.0) * f.norm();
    Ok(SeriesValue::new(f, err, seed.terms_used + dseed.terms_used, seed.status))
}
