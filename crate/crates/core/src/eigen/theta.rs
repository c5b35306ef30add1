use super::psi::ValueAndSlope;
use super::{potential, psi1, psi2, theta_from_psi, Params};
use crate::error::{Error, Result};
use crate::hyp_series::{gauss_2f1_arg, HypArg};
use crate::ode::{integrate_to_nodes, OdeOptions};
use crate::special_core::{half_base, half_power_pair, reciprocal_gamma, Sign};
use crate::C64;
use std::f64::consts::PI;

/// (θ₁, θ₂) at x from the Ψ combinations; intended for moderate |σ|, where
/// the two Ψ terms do not cancel catastrophically.
pub fn theta_basis(params: &Params, sigma: C64, x: f64) -> Result<(C64, C64)> {
    let m = theta_from_psi(params, sigma)?;
    let p1 = psi1(params, sigma, x)?;
    let p2 = psi2(params, sigma, x)?;
    Ok((m.m11 * p1 + m.m12 * p2, m.m21 * p1 + m.m22 * p2))
}

/// The Jost solution J₊ ~ x^{−1/2+σ} as x → +∞, from its ₂F₁ series in
/// 1/(1/2−ix). Accurate where |1/2−ix| is comfortably above 1.
pub fn jost_series(params: &Params, sigma: C64, x: f64) -> Result<ValueAndSlope> {
    let w = params.w();
    let plus = half_base(x, Sign::Plus);
    let minus = half_base(x, Sign::Minus);
    let a = C64::new(0.5, params.beta()) - sigma;
    let b = 0.5 + params.alpha() - sigma;
    let c = 1.0 - 2.0 * sigma;
    let p = 0.5 * w;
    let q = -0.5 * w - 0.5 + sigma;
    let arg = HypArg::with_complement(1.0 / minus, -plus / minus);
    let f = gauss_2f1_arg(a, b, c, arg)?.value;
    let df = gauss_2f1_arg(a + 1.0, b + 1.0, c + 1.0, arg)?.value * (a * b / c);
    let i = C64::new(0.0, 1.0);
    let phase = (-i * PI * (0.5 * w + 0.25 - 0.5 * sigma)).exp();
    let pre = phase * half_power_pair(x, p, q);
    let log_slope = i * p / plus - i * q / minus;
    let dz = i / (minus * minus);
    Ok(ValueAndSlope { value: pre * f, slope: pre * (log_slope * f + df * dz) })
}

fn seed_point(sigma: C64, xs: &[f64]) -> f64 {
    let far = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (8.0f64).max(2.0 * sigma.norm()).max(far + 1.0)
}

/// J₊ at every x in `xs` (any order): seeded from [`jost_series`] beyond the
/// largest node and carried inward in y = arcsinh 2x, where the equation
/// reads f″ + tanh(y) f′ + (V − σ²) f = 0.
pub fn jost_on_nodes(params: &Params, sigma: C64, xs: &[f64], opts: OdeOptions) -> Result<Vec<C64>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("Jost nodes must be finite".into()));
    }
    let x_seed = seed_point(sigma, xs);
    let seed = jost_series(params, sigma, x_seed)?;
    let y_seed = (2.0 * x_seed).asinh();
    let dxdy = (0.25 + x_seed * x_seed).sqrt();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[j].total_cmp(&xs[i]));
    let ys: Vec<f64> = order.iter().map(|&i| (2.0 * xs[i]).asinh()).collect();
    let sigma_sq = sigma * sigma;
    let p = *params;
    let rhs = move |y: f64, s: &[C64; 2]| {
        let x = 0.5 * y.sinh();
        let v = potential(&p, x) - sigma_sq;
        [s[1], -y.tanh() * s[1] - v * s[0]]
    };
    let (states, _) = integrate_to_nodes(&rhs, y_seed, [seed.value, seed.slope * dxdy], &ys, opts)?;
    let mut out = vec![C64::new(0.0, 0.0); xs.len()];
    for (k, &i) in order.iter().enumerate() {
        out[i] = states[k][0];
    }
    Ok(out)
}

/// Weights (c₊, c₋) in Φ(σ,t;x) = c₊·J₊(x) + c₋·J̃₊(−x), J̃₊ the Jost solution at
/// (α, −β). Equal to e^{∓iπ(1/4+σ/2+t)}/(2πΓ(1−2σ)).
pub fn phi_jost_weights(sigma: C64, t: C64) -> [C64; 2] {
    let i = C64::new(0.0, 1.0);
    let lead = reciprocal_gamma(1.0 - 2.0 * sigma) / (2.0 * PI);
    let arg = PI * (0.25 + 0.5 * sigma + t);
    [lead * (-i * arg).exp(), lead * (i * arg).exp()]
}

/// J₊(α,β; x) and J₊(α,−β; −x) at every node; the building blocks of θ₁/B
/// and θ₂/D, and of Φ for any t.
pub fn jost_pair_on_nodes(params: &Params, sigma: C64, xs: &[f64], opts: OdeOptions) -> Result<(Vec<C64>, Vec<C64>)> {
    let right = jost_on_nodes(params, sigma, xs, opts)?;
    let mirrored: Vec<f64> = xs.iter().map(|x| -x).collect();
    let left = jost_on_nodes(&params.reflected(), sigma, &mirrored, opts)?;
    Ok((right, left))
}
