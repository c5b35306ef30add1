use super::{phi, Params, SpectralPoint};
use crate::error::{Error, Result};
use crate::hyp_series::{gauss_2f1_arg, HypArg};
use crate::special_core::{complex_gamma, gamma_ratio, half_base, half_power_pair, ln_gamma, Sign};
use crate::C64;
use std::f64::consts::PI;

fn check_index(params: &Params, k: usize) -> Result<()> {
    if !((k as f64) < params.alpha() - 0.5) {
        return Err(Error::Range(format!("k = {k} needs k < α − 1/2 = {}", params.alpha() - 0.5)));
    }
    Ok(())
}

/// Θᵏ(x) = (1/2+ix)^{−w/2} (1/2−ix)^{−w̄/2} ₂F₁(−k, k−2α+1; 1−w; 1/2+ix),
/// a square-integrable eigenfunction for 0 ≤ k < α − 1/2.
pub fn romanovski_theta(params: &Params, k: usize, x: f64) -> Result<C64> {
    check_index(params, k)?;
    let w = params.w();
    let arg = HypArg::with_complement(half_base(x, Sign::Plus), half_base(x, Sign::Minus));
    let poly = gauss_2f1_arg(C64::new(-(k as f64), 0.0), C64::new(k as f64 - 2.0 * params.alpha() + 1.0, 0.0), 1.0 - w, arg)?;
    Ok(half_power_pair(x, -0.5 * w, -0.5 * w.conj()) * poly.value)
}

/// Its eigenvalue σ² with σ = α − 1/2 − k.
pub fn romanovski_sigma(params: &Params, k: usize) -> Result<f64> {
    check_index(params, k)?;
    Ok(params.alpha() - 0.5 - k as f64)
}

/// ∫|Θᵏ|² dx = 2π·k!Γ(2α−k) / ((2α−1−2k)·|Γ(α+iβ)|²).
pub fn romanovski_norm_sq(params: &Params, k: usize) -> Result<f64> {
    check_index(params, k)?;
    let a = params.alpha();
    let kf = k as f64;
    let ln = ln_gamma(C64::new(kf + 1.0, 0.0)) + ln_gamma(C64::new(2.0 * a - kf, 0.0))
        - 2.0 * ln_gamma(C64::new(a, params.beta())).re;
    Ok(2.0 * PI * ln.re.exp() / (2.0 * a - 1.0 - 2.0 * kf))
}

/// The tabulated k!Γ(2α−k)/((2k−2α+1)Γ(α+iβ)Γ(α−iβ)), kept verbatim for
/// comparison. It is negative on the admissible range and equals
/// −[`romanovski_norm_sq`]/(2π).
pub fn romanovski_norm_sq_as_printed(params: &Params, k: usize) -> Result<f64> {
    check_index(params, k)?;
    let a = params.alpha();
    let kf = k as f64;
    let w = params.w();
    let v = gamma_ratio(&[C64::new(kf + 1.0, 0.0), C64::new(2.0 * a - kf, 0.0)], &[w, w.conj()])?;
    Ok(v.re / (2.0 * kf - 2.0 * a + 1.0))
}

/// Γ[2α−k, w−k, 1−w]·Φ(k−α+1/2, −w/2; x), which reproduces Θᵏ.
pub fn romanovski_via_phi(params: &Params, k: usize, x: f64) -> Result<C64> {
    check_index(params, k)?;
    let w = params.w();
    let kf = k as f64;
    let g = complex_gamma(C64::new(2.0 * params.alpha() - kf, 0.0))? * complex_gamma(w - kf)? * complex_gamma(1.0 - w)?;
    let pt = SpectralPoint::new(C64::new(kf - params.alpha() + 0.5, 0.0), -0.5 * w);
    Ok(g * phi(params, &pt, x)?)
}
