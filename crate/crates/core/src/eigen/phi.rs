use super::{connection_coeffs, psi1, psi2, Params, SpectralPoint};
use crate::error::{Error, Result};
use crate::hyp_series::{bilateral_h_star, BilateralParams, SeriesValue};
use crate::special_core::{half_base, half_power_pair, sin_pi, Sign};
use crate::C64;

/// Largest |1/2 − ix| for which `Auto` tries the bilateral sum first: its
/// cutoff grows like 60·|1/2 − ix| and is capped at 20000 terms.
const DIRECT_MODULUS_LIMIT: f64 = 333.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiPath {
    /// The ₂H₂* sum on the unit circle.
    Direct,
    /// The Ψ₁, Ψ₂ combination.
    Fallback,
    /// Direct where its exponent κ = 2Re σ − 1 is negative and x moderate,
    /// otherwise (or on failure) the fallback.
    Auto,
}

/// Bilateral parameters of Φ(σ, t; x).
pub fn phi_bilateral_params(params: &Params, pt: &SpectralPoint, x: f64) -> Result<BilateralParams> {
    let (a, b) = (params.alpha(), params.beta());
    let w = params.w();
    let st = pt.sigma + pt.t;
    let upper = [C64::new(1.0 - a, b) * 0.5 + st, C64::new(1.0 + a, -b) * 0.5 + st];
    let lower = [1.0 - 0.5 * w + pt.t, 1.0 + 0.5 * w + pt.t];
    let u = -half_base(x, Sign::Plus) / half_base(x, Sign::Minus);
    BilateralParams::new(&upper, &lower, u / u.norm())
}

/// Φ from (1/2+ix)^t (1/2−ix)^{−1/2−t−σ} ₂H₂*[…; u].
pub fn phi_direct(params: &Params, pt: &SpectralPoint, x: f64) -> Result<SeriesValue> {
    let bp = phi_bilateral_params(params, pt, x)?;
    let series = bilateral_h_star(&bp)?;
    Ok(series.scaled(half_power_pair(x, pt.t, -0.5 - pt.t - pt.sigma)))
}

/// Φ = (C₁ sin π(t+w/2) Ψ₁ + C₂ sin π(−t+w/2) Ψ₂) / sin πw.
pub fn phi_fallback(params: &Params, pt: &SpectralPoint, x: f64) -> Result<C64> {
    let w = params.w();
    let denom = sin_pi(w);
    if denom.norm() < 1e-12 {
        return Err(Error::Degenerate(format!("sin π(α+iβ) vanishes at w = {w}")));
    }
    let (c1, c2) = connection_coeffs(params, pt.sigma);
    let half = 0.5 * w;
    let mut total = C64::new(0.0, 0.0);
    if c1 != C64::new(0.0, 0.0) {
        total += c1 * sin_pi(pt.t + half) * psi1(params, pt.sigma, x)?;
    }
    if c2 != C64::new(0.0, 0.0) {
        total += c2 * sin_pi(half - pt.t) * psi2(params, pt.sigma, x)?;
    }
    Ok(total / denom)
}

pub fn phi_with_path(params: &Params, pt: &SpectralPoint, x: f64, path: PhiPath) -> Result<C64> {
    match path {
        PhiPath::Direct => Ok(phi_direct(params, pt, x)?.value),
        PhiPath::Fallback => phi_fallback(params, pt, x),
        PhiPath::Auto => {
            let kappa = 2.0 * pt.sigma.re - 1.0;
            let modulus = half_base(x, Sign::Minus).norm();
            let fallback_ok = sin_pi(params.w()).norm() >= 1e-12;
            if kappa < 0.0 && (modulus <= DIRECT_MODULUS_LIMIT || !fallback_ok) {
                match phi_direct(params, pt, x) {
                    Ok(v) => return Ok(v.value),
                    Err(e) if !fallback_ok => return Err(e),
                    Err(_) => {}
                }
            }
            phi_fallback(params, pt, x)
        }
    }
}

/// Φ(σ, t; x), an eigenfunction of 𝒟 with eigenvalue σ².
pub fn phi(params: &Params, pt: &SpectralPoint, x: f64) -> Result<C64> {
    phi_with_path(params, pt, x, PhiPath::Auto)
}
