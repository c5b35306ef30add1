use crate::eigen::{phi, Params, SpectralPoint};
use crate::error::{Error, Result};
use crate::hyp_series::{bilateral_h_star, BilateralParams};
use crate::quad::{integrate_pieces_fallible, QuadOptions};
use crate::special_core::{cos_pi, gamma_ratio, half_power_pair, sin_pi};
use crate::C64;
use std::f64::consts::PI;

/// ∫ dx / ((1/2+ix)^μ (1/2−ix)^ν) = 2πΓ(μ+ν−1)/(Γ(μ)Γ(ν)) for Re(μ+ν) > 1.
pub fn beta_integral(mu: C64, nu: C64) -> Result<C64> {
    if (mu + nu).re <= 1.0 {
        return Err(Error::Divergence(format!("Re(μ+ν) = {} must exceed 1", (mu + nu).re)));
    }
    Ok(2.0 * PI * gamma_ratio(&[mu + nu - 1.0], &[mu, nu])?)
}

/// (1/2+ix)^{−p} (1/2−ix)^{−q}.
pub fn power_function(p: C64, q: C64, x: f64) -> C64 {
    half_power_pair(x, -p, -q)
}

/// Transform of (1/2+ix)^{−p}(1/2−ix)^{−q}, by term-wise beta integrals:
/// 2πΓ(p+q+σ̄−1/2) ₃H₃*[(1−w)/2+σ̄+t̄, (1+w)/2+σ̄+t̄, 1−q+t̄;
/// 1−w̄/2+t̄, 1+w̄/2+t̄, p+1/2+σ̄+t̄; 1].
pub fn closed_form_transform_power(params: &Params, p: C64, q: C64, sigma: C64, t: C64) -> Result<C64> {
    let w = params.w();
    let (sb, tb) = (sigma.conj(), t.conj());
    let upper = [(1.0 - w) / 2.0 + sb + tb, (1.0 + w) / 2.0 + sb + tb, 1.0 - q + tb];
    let lower = [1.0 - w.conj() / 2.0 + tb, 1.0 + w.conj() / 2.0 + tb, p + 0.5 + sb + tb];
    let series = bilateral_h_star(&BilateralParams::new(&upper, &lower, C64::new(1.0, 0.0))?)?;
    Ok(2.0 * PI * gamma_ratio(&[p + q + sb - 0.5], &[])? * series.value)
}

/// The q = −w̄/2 case, where the ₃H₃* collapses to a Dougall ₂H₂*:
/// −2 sin π(w̄/2+t̄) Γ(p+(−w̄−1)/2+σ̄) Γ(p+(−w̄−1)/2−σ̄)
/// / (Γ(p+w/2) Γ(p−w/2) Γ(1/2−α−σ̄) Γ(1/2+iβ−σ̄)).
pub fn closed_form_q_reduction(params: &Params, p: C64, sigma: C64, t: C64) -> Result<C64> {
    let w = params.w();
    let (sb, tb) = (sigma.conj(), t.conj());
    let (a, b) = (params.alpha(), params.beta());
    let shift = (-w.conj() - 1.0) / 2.0;
    let ratio = gamma_ratio(
        &[p + shift + sb, p + shift - sb],
        &[p + w / 2.0, p - w / 2.0, 0.5 - a - sb, C64::new(0.5, b) - sb],
    )?;
    Ok(-2.0 * sin_pi(w.conj() / 2.0 + tb) * ratio)
}

/// The p = w/2 case:
/// 2 cos π(w/2+σ̄+t̄) Γ(q+(w−1)/2+σ̄) Γ(q+(w−1)/2−σ̄)
/// / (Γ(q+w̄/2) Γ(q−w̄/2) Γ(1/2+α−σ̄) Γ(1/2+iβ−σ̄)).
pub fn closed_form_p_reduction(params: &Params, q: C64, sigma: C64, t: C64) -> Result<C64> {
    let w = params.w();
    let (sb, tb) = (sigma.conj(), t.conj());
    let (a, b) = (params.alpha(), params.beta());
    let shift = (w - 1.0) / 2.0;
    let ratio = gamma_ratio(
        &[q + shift + sb, q + shift - sb],
        &[q + w.conj() / 2.0, q - w.conj() / 2.0, 0.5 + a - sb, C64::new(0.5, b) - sb],
    )?;
    Ok(2.0 * cos_pi(w / 2.0 + sb + tb) * ratio)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedTransform {
    pub value: C64,
    pub quadrature_error: f64,
    /// Bound on the two discarded tails |x| > X.
    pub tail_bound: f64,
}

/// ∫_{−X}^{X} (1/2+ix)^{−p}(1/2−ix)^{−q} conj Φ(σ,t;x) dx in y = arcsinh 2x,
/// with the tails bounded through |integrand| ≤ C·|x|^{−e}·ln|x|,
/// e = Re(p+q) + 1/2 − |Re σ|, C fitted at ±X.
pub fn power_transform_quadrature(params: &Params, p: C64, q: C64, pt: &SpectralPoint, cutoff: f64) -> Result<TruncatedTransform> {
    let decay = (p + q).re + 0.5 - pt.sigma.re.abs();
    if decay <= 1.0 || !(cutoff > std::f64::consts::E) {
        return Err(Error::Divergence(format!("power tail with exponent {decay} is not integrable beyond X = {cutoff}")));
    }
    let integrand = |x: f64| -> Result<C64> { Ok(power_function(p, q, x) * phi(params, pt, x)?.conj()) };
    let y_max = (2.0 * cutoff).asinh();
    let breaks: Vec<f64> = (0..=16).map(|j| -y_max + 2.0 * y_max * j as f64 / 16.0).collect();
    let opts = QuadOptions { abs_tol: 1e-9, ..QuadOptions::default() };
    let r = integrate_pieces_fallible(
        |y| {
            let x = 0.5 * y.sinh();
            Ok(integrand(x)? * 0.5 * y.cosh())
        },
        &breaks,
        opts,
    )?;
    let lx = cutoff.ln();
    let mut tail_bound = 0.0;
    for x in [cutoff, -cutoff] {
        let c = integrand(x)?.norm() / (cutoff.powf(-decay) * lx);
        // ∫_X^∞ x^{−e} ln x dx = X^{1−e}(ln X/(e−1) + 1/(e−1)²).
        tail_bound += c * cutoff.powf(1.0 - decay) * (lx / (decay - 1.0) + 1.0 / (decay - 1.0).powi(2));
    }
    Ok(TruncatedTransform { value: r.value, quadrature_error: r.abs_error, tail_bound })
}
