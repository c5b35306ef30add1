use super::{require_generic_sigma, Mat2, Params};
use crate::error::Result;
use crate::special_core::{cos_pi, gamma_ratio, reciprocal_gamma};
use crate::C64;
use std::f64::consts::PI;

/// C(α,β,σ) = 1/Γ[1/2−iβ−σ, 1/2−α−σ, 1+w]; entire in σ.
fn connection_c(params: &Params, sigma: C64) -> C64 {
    reciprocal_gamma(C64::new(0.5, -params.beta()) - sigma)
        * reciprocal_gamma(0.5 - params.alpha() - sigma)
        * reciprocal_gamma(1.0 + params.w())
}

/// (C₁, C₂) with C₂(α,β,σ) = C₁(−α,−β,σ).
pub fn connection_coeffs(params: &Params, sigma: C64) -> (C64, C64) {
    (connection_c(params, sigma), connection_c(&params.mirrored(), sigma))
}

/// γ(α,β,σ) = exp{(π/2)(iα − β + iσ)}.
pub fn gamma_phase(params: &Params, sigma: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    (0.5 * PI * (i * params.alpha() - params.beta() + i * sigma)).exp()
}

/// A(α,β,σ) = Γ[1+w, −2σ / 1/2+α−σ, 1/2+iβ−σ].
pub fn amplitude(params: &Params, sigma: C64) -> Result<C64> {
    gamma_ratio(
        &[1.0 + params.w(), -2.0 * sigma],
        &[0.5 + params.alpha() - sigma, C64::new(0.5, params.beta()) - sigma],
    )
}

/// (A, γ) at (α, β, σ). Rejects 2σ near an integer.
pub fn asymptotic_coeffs(params: &Params, sigma: C64) -> Result<(C64, C64)> {
    require_generic_sigma(sigma)?;
    Ok((amplitude(params, sigma)?, gamma_phase(params, sigma)))
}

/// Coefficients of Ψ₁ on the four power laws
/// [x^{−1/2−σ}, x^{−1/2+σ}] at +∞ and [(−x)^{−1/2−σ}, (−x)^{−1/2+σ}] at −∞.
pub fn psi1_asymptotic_vector(params: &Params, sigma: C64) -> Result<[C64; 4]> {
    require_generic_sigma(sigma)?;
    let e_plus = C64::from_polar(1.0, 0.25 * PI);
    let e_minus = e_plus.conj();
    let m = params.mirrored();
    let a_pos = amplitude(params, sigma)?;
    let a_neg = amplitude(params, -sigma)?;
    Ok([
        e_plus * gamma_phase(params, sigma) * a_pos,
        e_plus * gamma_phase(params, -sigma) * a_neg,
        e_minus * gamma_phase(&m, -sigma) * a_pos,
        e_minus * gamma_phase(&m, sigma) * a_neg,
    ])
}

/// 𝒢(σ) = Γ[1/2−α−σ, 1/2+α−σ, 1/2−iβ−σ, 1/2+iβ−σ].
pub fn scattering_g(params: &Params, sigma: C64) -> Result<C64> {
    let (a, b) = (params.alpha(), params.beta());
    gamma_ratio(
        &[0.5 - a - sigma, 0.5 + a - sigma, C64::new(0.5, -b) - sigma, C64::new(0.5, b) - sigma],
        &[],
    )
}

/// The scattering matrix [[A, B], [D, C]] of θ₁, θ₂ (B = D).
pub fn scattering_matrix(params: &Params, sigma: C64) -> Result<Mat2> {
    require_generic_sigma(sigma)?;
    let g = scattering_g(params, sigma)?;
    let ratio = gamma_ratio(&[2.0 * sigma], &[-2.0 * sigma])?;
    let (a, b) = (params.alpha(), params.beta());
    let lo = cos_pi(a - sigma);
    let hi = cos_pi(a + sigma);
    let (down, up) = ((-PI * b).exp(), (PI * b).exp());
    let scale = ratio * g / (2.0 * PI * PI);
    let refl_left = (down * lo + up * hi) * scale;
    let refl_right = (up * lo + down * hi) * scale;
    let transmission = g * gamma_ratio(&[], &[1.0 - 2.0 * sigma, -2.0 * sigma])? / (2.0 * PI);
    Ok(Mat2::new(refl_left, transmission, transmission, refl_right))
}

/// μ(α,β,σ) = exp{(π/2)(−iα + β + iσ)}.
fn theta_phase(params: &Params, sigma: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    (0.5 * PI * (-i * params.alpha() + params.beta() + i * sigma)).exp()
}

/// M(α,β,σ) = Γ[−w, 1/2+α−σ, 1/2+iβ−σ / −2σ].
fn theta_weight(params: &Params, sigma: C64) -> Result<C64> {
    gamma_ratio(
        &[-params.w(), 0.5 + params.alpha() - sigma, C64::new(0.5, params.beta()) - sigma],
        &[-2.0 * sigma],
    )
}

/// Rows give θ₁, θ₂ as combinations of (Ψ₁, Ψ₂).
pub fn theta_from_psi(params: &Params, sigma: C64) -> Result<Mat2> {
    params.require_nondegenerate()?;
    require_generic_sigma(sigma)?;
    let m = params.mirrored();
    let w1 = theta_weight(params, sigma)?;
    let w2 = theta_weight(&m, sigma)?;
    let k1 = -C64::from_polar(1.0, 0.75 * PI) / (2.0 * PI);
    let k2 = C64::from_polar(1.0, 0.25 * PI) / (2.0 * PI);
    Ok(Mat2::new(
        k1 * theta_phase(params, sigma) * w1,
        k1 * theta_phase(&m, sigma) * w2,
        k2 * theta_phase(&m, -sigma) * w1,
        k2 * theta_phase(params, -sigma) * w2,
    ))
}

/// Weights (c₁, c₂) in Φ(σ,t) = c₁θ₁ + c₂θ₂, namely
/// Γ(−2σ)/𝒢 · e^{∓iπ(1/4+σ/2+t)}.
pub fn phi_theta_weights(params: &Params, sigma: C64, t: C64) -> Result<[C64; 2]> {
    let g = scattering_g(params, sigma)?;
    let lead = gamma_ratio(&[-2.0 * sigma], &[])?.fdiv(g);
    let i = C64::new(0.0, 1.0);
    let arg = PI * (0.25 + 0.5 * sigma + t);
    Ok([lead * (-i * arg).exp(), lead * (i * arg).exp()])
}

/// Coefficients of −ix·Φ(σ) = c₋Φ(σ−1) + c₀Φ(σ) + c₊Φ(σ+1).
pub fn difference_coefficients(params: &Params, sigma: C64) -> [C64; 3] {
    let (a, b) = (params.alpha(), params.beta());
    let lower = (0.5 + a - sigma)
        * (0.5 - a - sigma)
        * (C64::new(0.5, b) - sigma)
        * (C64::new(0.5, -b) - sigma)
        / ((-2.0 * sigma) * (1.0 - 2.0 * sigma));
    let middle = -C64::new(0.0, 2.0 * a * b) / ((2.0 * sigma - 1.0) * (2.0 * sigma + 1.0));
    let upper = 1.0 / (2.0 * sigma * (1.0 + 2.0 * sigma));
    [lower, middle, upper]
}
