use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check, rel_dev, Check, Context, Measurement};
use crate::eigen::{
    eigen_residual, gram_det_closed_form, gram_matrix_delta, ode_oracle, phi, phi_direct, phi_fallback, phi_gram,
    psi1, psi1_asymptotic_vector, psi1_with_slope, psi2, romanovski_norm_sq, romanovski_norm_sq_as_printed,
    romanovski_sigma, romanovski_theta, romanovski_via_phi, scattering_matrix, spectral_density_r, spectral_matrix_xi,
    theta_basis, Mat2, Params, SpectralPoint,
};
use crate::error::{Error, Result};
use crate::quad::{integrate_pieces, QuadOptions};
use crate::{c64, C64};

/// The configured (α, β), or a draw with α ∈ [0.1, 1.2), β ∈ [−1, 1).
fn draw_params(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<Params> {
    let (a, b) = (rng.gen_range(0.1..1.2), rng.gen_range(-1.0..1.0));
    ctx.params_or(a, b)
}

fn draw_continuous_params(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<Params> {
    let (a, b) = (rng.gen_range(0.1..0.9), rng.gen_range(-1.0..1.0));
    ctx.params_or(a, b)
}

fn fold_max(acc: f64, r: f64) -> f64 {
    if acc.is_nan() || r.is_nan() {
        f64::NAN
    } else {
        acc.max(r)
    }
}

type Eigenfunction = fn(&Params, C64, C64, f64) -> Result<C64>;

/// 10 draws of (α, β, σ, t), five x each; residual of 𝒟f = σ²f.
fn residual_check(name: &'static str, f: Eigenfunction) -> Check {
    check(name, 1e-6, move |ctx, rng| {
        let mut max = 0.0;
        let mut n = 0;
        for _ in 0..10 {
            let params = draw_params(ctx, rng)?;
            let sigma = c64(rng.gen_range(-0.3..0.3), rng.gen_range(0.1..2.5));
            let t = c64(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3));
            for _ in 0..5 {
                let x = rng.gen_range(-5.0..5.0);
                let r = eigen_residual(&params, sigma, |x| f(&params, sigma, t, x), x)?;
                max = fold_max(max, r.best());
                n += 1;
            }
        }
        Ok(Measurement::new(max, n))
    })
}

pub(super) fn eigen_checks() -> Vec<Check> {
    vec![
        residual_check("residual_phi", |p, s, t, x| phi(p, &SpectralPoint::new(s, t), x)),
        residual_check("residual_psi1", |p, s, _, x| psi1(p, s, x)),
        residual_check("residual_psi2", |p, s, _, x| psi2(p, s, x)),
        residual_check("residual_theta1", |p, s, _, x| theta_basis(p, s, x).map(|v| v.0)),
        residual_check("residual_theta2", |p, s, _, x| theta_basis(p, s, x).map(|v| v.1)),
        check("ode_oracle_psi1", 1e-8, |ctx, rng| {
            // Integrates from 0 and compares value and slope at four nodes up to 2.
            let mut max = 0.0;
            let mut n = 0;
            for _ in 0..5 {
                let params = draw_params(ctx, rng)?;
                let sigma = c64(rng.gen_range(-0.3..0.3), rng.gen_range(0.1..2.5));
                let mut x0 = 0.0;
                let start = psi1_with_slope(&params, sigma, x0)?;
                let (mut f, mut fp) = (start.value, start.slope);
                for x1 in [0.5, 1.0, 1.5, 2.0] {
                    (f, fp) = ode_oracle(&params, sigma, x0, f, fp, x1)?;
                    x0 = x1;
                    let want = psi1_with_slope(&params, sigma, x1)?;
                    let scale = want.value.norm().max(want.slope.norm()).max(1.0);
                    max = fold_max(max, (f - want.value).norm().max((fp - want.slope).norm()) / scale);
                    n += 1;
                }
            }
            Ok(Measurement::new(max, n))
        }),
        check("phi_path_agreement", 1e-9, |ctx, rng| {
            let mut max = 0.0;
            for _ in 0..20 {
                let params = draw_params(ctx, rng)?;
                let pt = SpectralPoint::new(c64(0.0, rng.gen_range(0.1..2.5)), c64(rng.gen_range(-0.5..0.5), 0.0));
                let x = rng.gen_range(-4.0..4.0);
                let direct = phi_direct(&params, &pt, x)?.value;
                let fallback = phi_fallback(&params, &pt, x)?;
                max = fold_max(max, (direct - fallback).norm() / direct.norm().max(fallback.norm()).max(1e-300));
            }
            Ok(Measurement::new(max, 20))
        }),
    ]
}

/// ½ Σ uᵢ v̄ᵢ on the four power-law coefficients.
fn v_inner(u: &[C64; 4], v: &[C64; 4]) -> C64 {
    0.5 * u.iter().zip(v).map(|(a, b)| a * b.conj()).sum::<C64>()
}

struct GramDraw {
    params: Params,
    sigma: C64,
    t: C64,
    s: C64,
}

fn gram_draw(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<GramDraw> {
    let params = draw_continuous_params(ctx, rng)?;
    let sigma = c64(0.0, rng.gen_range(0.05..1.25));
    let t = c64(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3));
    // s − t kept 0.2 away from the integers
    let s = t + c64(rng.gen_range(0.2..0.8), rng.gen_range(-0.3..0.3));
    Ok(GramDraw { params, sigma, t, s })
}

fn gram_check(name: &'static str, f: fn(&GramDraw) -> Result<f64>) -> Check {
    check(name, 1e-10, move |ctx, rng| {
        let mut max = 0.0;
        for _ in 0..20 {
            max = fold_max(max, f(&gram_draw(ctx, rng)?)?);
        }
        Ok(Measurement::new(max, 20))
    })
}

pub(super) fn gram_checks() -> Vec<Check> {
    vec![
        gram_check("delta_hermitian", |d| {
            let delta = gram_matrix_delta(&d.params, d.sigma)?;
            Ok(delta.hermitian_defect() / delta.max_abs())
        }),
        gram_check("delta_determinant", |d| {
            let det = gram_det_closed_form(&d.params, d.sigma)?;
            Ok(rel_dev(gram_matrix_delta(&d.params, d.sigma)?.det(), det, 1e-300))
        }),
        gram_check("xi_delta_identity", |d| {
            let xi = spectral_matrix_xi(&d.params, d.sigma)?;
            Ok((xi * gram_matrix_delta(&d.params, d.sigma)? - Mat2::identity()).max_abs())
        }),
        gram_check("xi_positive", |d| {
            // measured: 0 when Ξ is positive definite, 1 otherwise
            let (lo, _) = spectral_matrix_xi(&d.params, d.sigma)?.hermitian_eigenvalues();
            Ok(if lo > 0.0 { 0.0 } else { 1.0 })
        }),
        gram_check("phi_gram_inverse", |d| {
            let gram = phi_gram(&d.params, d.sigma, d.t, d.s)?;
            Ok((spectral_density_r(&d.params, d.sigma, d.t, d.s)? * gram - Mat2::identity()).max_abs())
        }),
        gram_check("phi_gram_hermitian", |d| {
            let gram = phi_gram(&d.params, d.sigma, d.t, d.s)?;
            Ok(gram.hermitian_defect() / gram.max_abs())
        }),
        gram_check("delta_from_asymptotics", |d| {
            let u1 = psi1_asymptotic_vector(&d.params, d.sigma)?;
            let u2 = psi1_asymptotic_vector(&d.params.mirrored(), d.sigma)?;
            let rebuilt = Mat2::new(v_inner(&u1, &u1), v_inner(&u1, &u2), v_inner(&u2, &u1), v_inner(&u2, &u2));
            let delta = gram_matrix_delta(&d.params, d.sigma)?;
            Ok((rebuilt - delta).max_abs() / delta.max_abs())
        }),
    ]
}

fn scattering_draw(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<(Params, C64)> {
    let params = draw_params(ctx, rng)?;
    params.require_nondegenerate()?;
    Ok((params, c64(0.0, rng.gen_range(0.05..3.0))))
}

pub(super) fn scattering_checks() -> Vec<Check> {
    vec![
        check("unitarity", 1e-10, |ctx, rng| {
            let mut max = 0.0;
            for _ in 0..20 {
                let (params, sigma) = scattering_draw(ctx, rng)?;
                let sm = scattering_matrix(&params, sigma)?;
                max = fold_max(max, (sm.adjoint() * sm - Mat2::identity()).max_abs());
            }
            Ok(Measurement::new(max, 20))
        }),
        check("b_equals_d", 1e-10, |ctx, rng| {
            let mut max = 0.0;
            for _ in 0..20 {
                let (params, sigma) = scattering_draw(ctx, rng)?;
                let sm = scattering_matrix(&params, sigma)?;
                max = fold_max(max, rel_dev(sm.m12, sm.m21, 1e-300));
            }
            Ok(Measurement::new(max, 20))
        }),
        check("theta_fit_monotone", 1.0, |ctx, rng| {
            // measured: the largest ratio of successive fit deviations
            let mut worst_ratio = 0.0;
            let mut final_dev = 0.0;
            for _ in 0..20 {
                let params = draw_params(ctx, rng)?;
                params.require_nondegenerate()?;
                let sigma = c64(0.0, rng.gen_range(0.1..2.0));
                let sm = scattering_matrix(&params, sigma)?;
                let mut last = f64::INFINITY;
                for x in [1e2, 1e3, 1e4] {
                    let pow = |e: C64| c64(x, 0.0).powc(e);
                    let (t1m, t2m) = theta_basis(&params, sigma, -x)?;
                    let (t1p, t2p) = theta_basis(&params, sigma, x)?;
                    let devs = [
                        (t1m - (pow(-0.5 - sigma) + sm.m11 * pow(-0.5 + sigma))).norm(),
                        (t1p - sm.m12 * pow(-0.5 + sigma)).norm(),
                        (t2m - sm.m21 * pow(-0.5 + sigma)).norm(),
                        (t2p - (sm.m22 * pow(-0.5 + sigma) + pow(-0.5 - sigma))).norm(),
                    ];
                    let dev = devs.iter().fold(0.0, |m: f64, d| fold_max(m, *d)) * x.sqrt();
                    if last.is_finite() {
                        worst_ratio = fold_max(worst_ratio, dev / last);
                    }
                    last = dev;
                }
                final_dev = fold_max(final_dev, last);
            }
            Ok(Measurement::new(worst_ratio, 20).with_note(format!("largest deviation at x = 1e4: {final_dev:.3e}")))
        }),
    ]
}

/// (α, β) with at least one discrete eigenvalue: the configured pair if it
/// has one, (1.8, 0.5) otherwise.
pub(super) fn discrete_params(ctx: &Context) -> Result<Params> {
    match ctx.params {
        Some(p) if p.discrete_count() > 0 => Ok(p),
        _ => Params::new(1.8, 0.5),
    }
}

/// ∫ Θʲ conj Θᵏ dx, in y = arcsinh 2x. The integrand decays like
/// e^{−(2α−1−j−k)|y|}, which sets the cut.
fn romanovski_overlap(params: &Params, j: usize, k: usize) -> Result<C64> {
    let rate = 2.0 * params.alpha() - 1.0 - (j + k) as f64;
    if rate <= 0.05 {
        return Err(Error::Divergence(format!("Θ^{j}·Θ^{k} decays too slowly (rate {rate}) to integrate")));
    }
    let cut = (36.0 / rate).clamp(40.0, 600.0);
    let breaks: Vec<f64> = (-16..=16).map(|i| cut * i as f64 / 16.0).collect();
    let err = std::cell::Cell::new(None);
    let value = integrate_pieces(
        |y| {
            let x = 0.5 * y.sinh();
            match (romanovski_theta(params, j, x), romanovski_theta(params, k, x)) {
                (Ok(a), Ok(b)) => a * b.conj() * (0.5 * y.cosh()),
                (Err(e), _) | (_, Err(e)) => {
                    err.set(Some(e));
                    c64(f64::NAN, f64::NAN)
                }
            }
        },
        &breaks,
        QuadOptions { abs_tol: 1e-13, ..Default::default() },
    );
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok(value?.value)
}

pub(super) fn romanovski_checks() -> Vec<Check> {
    vec![
        check("orthogonality", 1e-8, |ctx, _| {
            let params = discrete_params(ctx)?;
            let n = params.discrete_count();
            let mut max = 0.0;
            let mut pairs = 0;
            for j in 0..n {
                for k in j + 1..n {
                    let norm = (romanovski_norm_sq(&params, j)? * romanovski_norm_sq(&params, k)?).sqrt();
                    max = fold_max(max, romanovski_overlap(&params, j, k)?.norm() / norm);
                    pairs += 1;
                }
            }
            Ok(Measurement::new(max, pairs))
        }),
        check("norm_formula", 1e-8, |ctx, _| {
            let params = discrete_params(ctx)?;
            let mut max = 0.0;
            for k in 0..params.discrete_count() {
                let quad = romanovski_overlap(&params, k, k)?.re;
                max = fold_max(max, (quad - romanovski_norm_sq(&params, k)?).abs() / quad.abs());
            }
            Ok(Measurement::new(max, params.discrete_count()))
        }),
        check("norm_tabulated_ratio", 1e-7, |ctx, _| {
            // The tabulated norm differs by the constant factor −1/(2π).
            let params = discrete_params(ctx)?;
            let mut max = 0.0;
            let mut ratios = Vec::new();
            for k in 0..params.discrete_count() {
                let ratio = romanovski_overlap(&params, k, k)?.re / romanovski_norm_sq_as_printed(&params, k)?;
                max = fold_max(max, (ratio + 2.0 * PI).abs() / (2.0 * PI));
                ratios.push(format!("{ratio:.12}"));
            }
            Ok(Measurement::new(max, ratios.len()).with_note(format!("quadrature/tabulated = {}", ratios.join(", "))))
        }),
        check("phi_identity", 1e-9, |ctx, _| {
            let params = discrete_params(ctx)?;
            let mut max = 0.0;
            let mut n = 0;
            for k in 0..params.discrete_count() {
                for x in [-3.0, -1.2, 0.0, 0.4, 3.0] {
                    max = fold_max(max, rel_dev(romanovski_via_phi(&params, k, x)?, romanovski_theta(&params, k, x)?, 1e-300));
                    n += 1;
                }
            }
            Ok(Measurement::new(max, n))
        }),
        check("eigen_residual", 1e-6, |ctx, _| {
            let params = discrete_params(ctx)?;
            let mut max = 0.0;
            let mut n = 0;
            for k in 0..params.discrete_count() {
                let sigma = c64(romanovski_sigma(&params, k)?, 0.0);
                for x in [-2.5, -0.7, 0.3, 1.9] {
                    let r = eigen_residual(&params, sigma, |x| romanovski_theta(&params, k, x), x)?;
                    max = fold_max(max, r.best());
                    n += 1;
                }
            }
            Ok(Measurement::new(max, n))
        }),
    ]
}
