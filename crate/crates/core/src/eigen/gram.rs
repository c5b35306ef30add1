use super::{require_continuous, require_generic_sigma, Mat2, Params};
use crate::error::{Error, Result};
use crate::special_core::{cos_pi, cosh_pi, gamma_ratio, sin_pi};
use crate::C64;
use std::f64::consts::PI;

fn i_times(z: C64) -> C64 {
    C64::new(-z.im, z.re)
}

/// cosh π(β−iσ) cosh π(β+iσ).
fn cosh_pair(params: &Params, sigma: C64) -> C64 {
    let b = C64::new(params.beta(), 0.0);
    cosh_pi(b - i_times(sigma)) * cosh_pi(b + i_times(sigma))
}

/// cos π(α−σ) cos π(α+σ).
fn cos_pair(params: &Params, sigma: C64) -> C64 {
    cos_pi(params.alpha() - sigma) * cos_pi(params.alpha() + sigma)
}

fn check_gram_domain(params: &Params, sigma: C64) -> Result<()> {
    params.require_nondegenerate()?;
    require_continuous(sigma)?;
    require_generic_sigma(sigma)
}

/// Gram matrix Δᵢⱼ = ⟨Ψᵢ, Ψⱼ⟩ in V_σ, σ = iν.
pub fn gram_matrix_delta(params: &Params, sigma: C64) -> Result<Mat2> {
    check_gram_domain(params, sigma)?;
    let (a, b) = (params.alpha(), params.beta());
    let w = params.w();
    let wc = w.conj();
    let s2 = 2.0 * sigma;
    let k = 2.0 / PI;
    let ch = cosh_pair(params, sigma) * k;
    let co = cos_pair(params, sigma) * k;
    let ib = C64::new(0.5, b);
    let ibc = C64::new(0.5, -b);
    let d11 = ch * gamma_ratio(&[1.0 + w, 1.0 + wc, s2, -s2], &[0.5 + a - sigma, 0.5 + a + sigma])?;
    let d12 = co * gamma_ratio(&[1.0 - wc, 1.0 + w, s2, -s2], &[ib - sigma, ib + sigma])?;
    let d21 = co * gamma_ratio(&[1.0 - w, 1.0 + wc, s2, -s2], &[ibc - sigma, ibc + sigma])?;
    let d22 = ch * gamma_ratio(&[1.0 - w, 1.0 - wc, s2, -s2], &[0.5 - a - sigma, 0.5 - a + sigma])?;
    Ok(Mat2::new(d11, d12, d21, d22))
}

/// (4/π²)·cos π(α−σ) cos π(α+σ) cosh π(β−iσ) cosh π(β+iσ)(α²+β²)Γ[2σ,−2σ]².
pub fn gram_det_closed_form(params: &Params, sigma: C64) -> Result<C64> {
    check_gram_domain(params, sigma)?;
    let g = gamma_ratio(&[2.0 * sigma, -2.0 * sigma], &[])?;
    let r2 = params.alpha().powi(2) + params.beta().powi(2);
    Ok(4.0 / (PI * PI) * cos_pair(params, sigma) * cosh_pair(params, sigma) * r2 * g * g)
}

/// Ξ = Δ⁻¹ in closed form.
pub fn spectral_matrix_xi(params: &Params, sigma: C64) -> Result<Mat2> {
    check_gram_domain(params, sigma)?;
    let (a, b) = (params.alpha(), params.beta());
    let w = params.w();
    let wc = w.conj();
    let ib = C64::new(0.5, b);
    let ibc = C64::new(0.5, -b);
    let scale = 1.0 / (2.0 * PI * gamma_ratio(&[2.0 * sigma, -2.0 * sigma], &[])?);
    let x11 = gamma_ratio(&[0.5 + a + sigma, 0.5 + a - sigma, -w, -wc], &[])?;
    let x12 = gamma_ratio(&[ibc + sigma, ibc - sigma, -wc, w], &[])?;
    let x21 = gamma_ratio(&[ib + sigma, ib - sigma, -w, wc], &[])?;
    let x22 = gamma_ratio(&[0.5 - a + sigma, 0.5 - a - sigma, wc, w], &[])?;
    Ok(Mat2::new(x11, x12, x21, x22).scale(scale))
}

/// M = cosh π(β+iσ) cosh π(β−iσ) cos π(α+σ) cos π(α−σ) Γ[2σ,−2σ].
pub fn phi_gram_scale(params: &Params, sigma: C64) -> Result<C64> {
    require_continuous(sigma)?;
    require_generic_sigma(sigma)?;
    Ok(cosh_pair(params, sigma) * cos_pair(params, sigma) * gamma_ratio(&[2.0 * sigma, -2.0 * sigma], &[])?)
}

/// ⟨Φ(σ,t), Φ(σ,s)⟩ in V_σ = (2/π⁴)·M·cos π(σ+t−s̄).
pub fn phi_inner_product(params: &Params, sigma: C64, t: C64, s: C64) -> Result<C64> {
    let m = phi_gram_scale(params, sigma)?;
    Ok(2.0 / PI.powi(4) * m * cos_pi(sigma + t - s.conj()))
}

/// Gram matrix of (Φ(σ,t), Φ(σ,s)).
pub fn phi_gram(params: &Params, sigma: C64, t: C64, s: C64) -> Result<Mat2> {
    Ok(Mat2::new(
        phi_inner_product(params, sigma, t, t)?,
        phi_inner_product(params, sigma, t, s)?,
        phi_inner_product(params, sigma, s, t)?,
        phi_inner_product(params, sigma, s, s)?,
    ))
}

/// The spectral density R_{t,s}(σ), the inverse of [`phi_gram`].
pub fn spectral_density_r(params: &Params, sigma: C64, t: C64, s: C64) -> Result<Mat2> {
    let m = phi_gram_scale(params, sigma)?;
    let gap = sin_pi(s - t);
    if gap.norm() < 1e-12 {
        return Err(Error::Degenerate(format!("s − t = {} is (nearly) an integer", s - t)));
    }
    let denom = gap * sin_pi(s.conj() - t.conj());
    // fdiv: |2·m·denom|² overflows once ν ≳ 30.
    let pre = C64::new(PI.powi(4), 0.0).fdiv(2.0 * m * denom);
    Ok(Mat2::new(
        cos_pi(sigma + s - s.conj()),
        -cos_pi(sigma + t - s.conj()),
        -cos_pi(sigma + s - t.conj()),
        cos_pi(sigma + t - t.conj()),
    )
    .scale(pre))
}
