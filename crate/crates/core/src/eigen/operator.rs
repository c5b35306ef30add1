use super::Params;
use crate::error::{Error, Result};
use crate::ode::{integrate, OdeOptions};
use crate::special_core::{half_base, Sign};
use crate::C64;

/// V(x) = w²/(4(1/2+ix)) + w̄²/(4(1/2−ix)) + 1/4.
pub fn potential(params: &Params, x: f64) -> C64 {
    let w = params.w();
    w * w / (4.0 * half_base(x, Sign::Plus)) + w.conj() * w.conj() / (4.0 * half_base(x, Sign::Minus)) + 0.25
}

/// 𝒟f at x with fourth-order central differences of step h.
pub fn apply_d<F>(params: &Params, f: F, x: f64, h: f64) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidInput(format!("finite-difference step h = {h} must be positive")));
    }
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    Ok((0.25 + x * x) * d2 + 2.0 * x * d1 + potential(params, x) * f0)
}

/// |𝒟f − σ²f| / (|σ²f| + 1e-30) at steps h and h/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResidual {
    pub at_h: f64,
    pub at_half_h: f64,
}

impl EigenResidual {
    pub fn best(&self) -> f64 {
        self.at_h.min(self.at_half_h)
    }
}

/// Default step 1e-3 scaled by max(1, |x|), so that the rounding error of the
/// second difference stays level with the growth of 1/4 + x².
pub fn default_step(x: f64) -> f64 {
    1e-3 * x.abs().max(1.0)
}

pub fn eigen_residual<F>(params: &Params, sigma: C64, f: F, x: f64) -> Result<EigenResidual>
where
    F: Fn(f64) -> Result<C64>,
{
    let h = default_step(x);
    let f0 = f(x)?;
    let scale = (sigma * sigma * f0).norm() + 1e-30;
    let r = |step: f64| -> Result<f64> { Ok((apply_d(params, &f, x, step)? - sigma * sigma * f0).norm() / scale) };
    Ok(EigenResidual { at_h: r(h)?, at_half_h: r(0.5 * h)? })
}

/// Integrates 𝒟ψ = σ²ψ as a first-order system in x from (x0, f0, f0′) to x1.
pub fn ode_oracle(params: &Params, sigma: C64, x0: f64, f0: C64, f0_prime: C64, x1: f64) -> Result<(C64, C64)> {
    ode_oracle_with(params, sigma, x0, f0, f0_prime, x1, OdeOptions::default())
}

pub fn ode_oracle_with(
    params: &Params,
    sigma: C64,
    x0: f64,
    f0: C64,
    f0_prime: C64,
    x1: f64,
    opts: OdeOptions,
) -> Result<(C64, C64)> {
    let sigma_sq = sigma * sigma;
    let p = *params;
    let rhs = move |x: f64, s: &[C64; 2]| {
        let v = potential(&p, x) - sigma_sq;
        [s[1], -(2.0 * x * s[1] + v * s[0]) / (0.25 + x * x)]
    };
    let (state, _) = integrate(&rhs, x0, [f0, f0_prime], x1, opts)?;
    Ok((state[0], state[1]))
}
