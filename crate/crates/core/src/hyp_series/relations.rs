use super::{bilateral_h_star, gauss_2f1, BilateralParams, SeriesValue};
use crate::error::{Error, Result};
use crate::special_core::{gamma_ratio, is_nonpositive_integer, sin_pi};
use crate::C64;
use std::f64::consts::PI;

/// ₂H₂*[a₁,a₂; b₁,b₂; 1] = Γ[b₁+b₂−a₁−a₂−1 / b₁−a₁, b₁−a₂, b₂−a₁, b₂−a₂].
pub fn dougall_closed_form(a1: C64, a2: C64, b1: C64, b2: C64) -> Result<C64> {
    let top = b1 + b2 - a1 - a2 - 1.0;
    if is_nonpositive_integer(top) {
        return Err(Error::Pole(format!("b₁+b₂−a₁−a₂−1 = {} is a pole of Γ", top.re)));
    }
    gamma_ratio(&[top], &[b1 - a1, b1 - a2, b2 - a1, b2 - a2])
}

/// J_t(z) = (−z)^t ₂H₂*[a₁+t, a₂+t; b₁+t, b₂+t; z] with (−z)^t = e^{it(φ−π)},
/// z = e^{iφ}, φ ∈ (0, 2π).
pub fn shifted_solution_jt(a1: C64, a2: C64, b1: C64, b2: C64, t: C64, z: C64) -> Result<SeriesValue> {
    let mut phi = z.arg();
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    if phi.abs() < 1e-14 || (z - 1.0).norm() < 1e-14 {
        return Err(Error::Branch("(−z)^t is undefined at z = 1".into()));
    }
    let params = BilateralParams::new(&[a1 + t, a2 + t], &[b1 + t, b2 + t], z)?;
    let factor = if t == C64::new(0.0, 0.0) { C64::new(1.0, 0.0) } else { (C64::new(0.0, phi - PI) * t).exp() };
    Ok(bilateral_h_star(&params)?.scaled(factor))
}

/// |Σ sin π(t_{j+1}−t_{j+2})·J_{t_j}| over cyclic triples, relative to max|J|.
/// Zero up to rounding because the three J_t solve one second-order equation.
pub fn three_term_residual(a1: C64, a2: C64, b1: C64, b2: C64, ts: [C64; 3], z: C64) -> Result<f64> {
    let mut js = [C64::new(0.0, 0.0); 3];
    for (j, t) in ts.iter().enumerate() {
        js[j] = shifted_solution_jt(a1, a2, b1, b2, *t, z)?.value;
    }
    let combo = sin_pi(ts[1] - ts[2]) * js[0] + sin_pi(ts[2] - ts[0]) * js[1] + sin_pi(ts[0] - ts[1]) * js[2];
    let scale = js.iter().map(|j| j.norm()).fold(0.0, f64::max);
    Ok(combo.norm() / scale.max(1e-300))
}

/// Absolute residual of
/// −y·F[p,q;r;y] = c₋F[p−1,q+1;r;y] − (c₋+c₊)F[p,q;r;y] + c₊F[p+1,q−1;r;y].
pub fn contiguous_step_2f1(p: C64, q: C64, r: C64, y: C64) -> Result<f64> {
    let d = p - q;
    for v in [d, 1.0 + d, 1.0 - d] {
        if v.norm() < 1e-12 {
            return Err(Error::Degenerate(format!("p − q = {d} makes a contiguous coefficient singular")));
        }
    }
    let c_minus = q * (r - p) / ((q - p) * (1.0 + q - p));
    let c_plus = p * (r - q) / ((p - q) * (1.0 + p - q));
    let f = gauss_2f1(p, q, r, y)?.value;
    let f_lo = gauss_2f1(p - 1.0, q + 1.0, r, y)?.value;
    let f_hi = gauss_2f1(p + 1.0, q - 1.0, r, y)?.value;
    let lhs = -y * f;
    let rhs = c_minus * f_lo - (c_minus + c_plus) * f + c_plus * f_hi;
    Ok((lhs - rhs).norm())
}
