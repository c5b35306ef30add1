use super::Params;
use crate::error::Result;
use crate::hyp_series::{gauss_2f1_arg, HypArg};
use crate::special_core::{half_base, half_power_pair, Sign};
use crate::C64;

/// Ψ and dΨ/dx at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueAndSlope {
    pub value: C64,
    pub slope: C64,
}

/// u = −(1/2+ix)/(1/2−ix), with 1 − u = 1/(1/2−ix) formed without cancellation.
pub(crate) fn psi_argument(x: f64) -> HypArg {
    let plus = half_base(x, Sign::Plus);
    let minus = half_base(x, Sign::Minus);
    HypArg::with_complement(-plus / minus, 1.0 / minus)
}

/// Ψ₁(σ; x) = (1/2+ix)^{w/2} (1/2−ix)^{−w/2−1/2−σ} ₂F₁(1/2+α+σ, 1/2+iβ+σ; 1+w; u).
pub fn psi1(params: &Params, sigma: C64, x: f64) -> Result<C64> {
    let (a, b, c) = psi_parameters(params, sigma);
    let (p, q) = psi_exponents(params, sigma);
    let f = gauss_2f1_arg(a, b, c, psi_argument(x))?;
    Ok(half_power_pair(x, p, q) * f.value)
}

/// Ψ₂ is Ψ₁ at (−α, −β).
pub fn psi2(params: &Params, sigma: C64, x: f64) -> Result<C64> {
    psi1(&params.mirrored(), sigma, x)
}

fn psi_parameters(params: &Params, sigma: C64) -> (C64, C64, C64) {
    let w = params.w();
    (0.5 + params.alpha() + sigma, C64::new(0.5, params.beta()) + sigma, 1.0 + w)
}

fn psi_exponents(params: &Params, sigma: C64) -> (C64, C64) {
    let w = params.w();
    (0.5 * w, -0.5 * w - 0.5 - sigma)
}

/// Ψ₁ together with its x-derivative, from the contiguous ₂F₁ with all
/// parameters raised by one (du/dx = −i/(1/2−ix)²).
pub fn psi1_with_slope(params: &Params, sigma: C64, x: f64) -> Result<ValueAndSlope> {
    let (a, b, c) = psi_parameters(params, sigma);
    let (p, q) = psi_exponents(params, sigma);
    let arg = psi_argument(x);
    let f = gauss_2f1_arg(a, b, c, arg)?.value;
    let df = gauss_2f1_arg(a + 1.0, b + 1.0, c + 1.0, arg)?.value * (a * b / c);
    let plus = half_base(x, Sign::Plus);
    let minus = half_base(x, Sign::Minus);
    let i = C64::new(0.0, 1.0);
    let pre = half_power_pair(x, p, q);
    let log_slope = i * p / plus - i * q / minus;
    let du = -i / (minus * minus);
    Ok(ValueAndSlope { value: pre * f, slope: pre * (log_slope * f + df * du) })
}

pub fn psi2_with_slope(params: &Params, sigma: C64, x: f64) -> Result<ValueAndSlope> {
    psi1_with_slope(&params.mirrored(), sigma, x)
}

/// Ψ₁ through the Pfaff-equivalent form
/// (1/2+ix)^{w/2} (1/2−ix)^{w̄/2} ₂F₁(1/2+α+σ, 1/2+α−σ; 1+w; 1/2+ix),
/// an independent path for |x| < √3/2.
pub fn psi1_alternate(params: &Params, sigma: C64, x: f64) -> Result<C64> {
    let w = params.w();
    let a = 0.5 + params.alpha() + sigma;
    let b = 0.5 + params.alpha() - sigma;
    let arg = HypArg::with_complement(half_base(x, Sign::Plus), half_base(x, Sign::Minus));
    let f = gauss_2f1_arg(a, b, 1.0 + w, arg)?;
    Ok(half_power_pair(x, 0.5 * w, 0.5 * w.conj()) * f.value)
}
