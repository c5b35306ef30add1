use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::spectral::discrete_params;
use super::{check, rel_dev, Check, Context, Measurement, VerifyConfig};
use crate::eigen::{difference_coefficients, phi, require_generic_sigma, romanovski_norm_sq, romanovski_theta, Params, SpectralPoint};
use crate::error::Result;
use crate::ode::OdeOptions;
use crate::quad::{integrate_pieces, QuadOptions};
use crate::transform::{
    beta_integral, closed_form_p_reduction, closed_form_q_reduction, closed_form_transform_power, difference_operator_z,
    discrete_coefficients, discrete_projection, forward_transform, inverse_transform, plancherel_pairing, power_function,
    power_transform_quadrature, sample_transform, sample_transform_on, z_coefficients, NuGrid, SpectralMaps, SpectrumOptions,
    TestFunction, TransformSample,
};
use crate::{c64, C64};

const DEFAULT_PARAMS: (f64, f64) = (0.3, 0.7);

fn base_params(ctx: &Context) -> Result<Params> {
    ctx.params_or(DEFAULT_PARAMS.0, DEFAULT_PARAMS.1)
}

fn reconstruction_grid() -> Vec<f64> {
    (0..41).map(|k| -2.0 + 0.1 * k as f64).collect()
}

fn primary_maps() -> SpectralMaps {
    SpectralMaps::Orthogonal { t: c64(0.1, 0.0) }
}

fn secondary_maps() -> SpectralMaps {
    SpectralMaps::Orthogonal { t: c64(0.37, 0.2) }
}

fn spectrum(ctx: &Context) -> SpectrumOptions {
    SpectrumOptions { nu_max: ctx.nu_max, ..Default::default() }
}

/// A sample shared by several checks; whichever runs first computes it.
type Shared<T> = Arc<OnceLock<Result<T>>>;

fn shared<T, F: FnOnce() -> Result<T>>(cell: &Shared<T>, f: F) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<(f64, usize)> {
    let mut max = 0.0f64;
    let mut n = 0;
    for r in it {
        let r = r?;
        max = if max.is_nan() || r.is_nan() { f64::NAN } else { max.max(r) };
        n += 1;
    }
    Ok((max, n))
}

fn reconstruction_error(sample: &TransformSample, f: &TestFunction, xs: &[f64]) -> Result<(f64, usize)> {
    max_over(xs.iter().map(|&x| Ok((inverse_transform(sample, x)? - f.eval(x)).norm())))
}

fn map_pair<'a>(
    ctx: &Context,
    cell: &'a Shared<(TransformSample, TransformSample)>,
    make: fn() -> TestFunction,
) -> Result<&'a (TransformSample, TransformSample)> {
    shared(cell, || {
        let params = base_params(ctx)?;
        let f = make();
        let xs = reconstruction_grid();
        Ok((
            sample_transform(&params, &f, primary_maps(), spectrum(ctx), &xs)?,
            sample_transform(&params, &f, secondary_maps(), spectrum(ctx), &xs)?,
        ))
    })
}

fn round_trip_pair(recon: &'static str, agreement: &'static str, make: fn() -> TestFunction) -> [Check; 2] {
    let cell: Shared<(TransformSample, TransformSample)> = Arc::default();
    let other = Arc::clone(&cell);
    [
        check(recon, 1e-3, move |ctx, _| {
            let (a, b) = map_pair(ctx, &cell, make)?;
            let f = make();
            let xs = reconstruction_grid();
            let (ea, n) = reconstruction_error(a, &f, &xs)?;
            let (eb, _) = reconstruction_error(b, &f, &xs)?;
            let note = if a.discrete.is_empty() { String::new() } else { format!("{} discrete terms", a.discrete.len()) };
            Ok(Measurement::new(ea.max(eb), 2 * n).with_note(note))
        }),
        check(agreement, 1e-3, move |ctx, _| {
            let (a, b) = map_pair(ctx, &other, make)?;
            let (spread, n) = max_over(
                reconstruction_grid().into_iter().map(|x| Ok((inverse_transform(a, x)? - inverse_transform(b, x)?).norm())),
            )?;
            Ok(Measurement::new(spread, n))
        }),
    ]
}

/// Midpoint rule with n cells on [a, b].
fn midpoint<F: Fn(f64) -> Result<C64>>(g: F, a: f64, b: f64, n: usize) -> Result<C64> {
    let h = (b - a) / n as f64;
    (0..n).map(|k| Ok(g(a + (k as f64 + 0.5) * h)? * h)).sum()
}

pub(super) fn roundtrip_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    checks.extend(round_trip_pair("hat_reconstruction", "hat_map_agreement", TestFunction::hat));
    checks.extend(round_trip_pair("bump_reconstruction", "bump_map_agreement", TestFunction::bump));
    checks.extend(round_trip_pair("cubic_reconstruction", "cubic_map_agreement", TestFunction::cubic));
    checks.push(check("basis_independence", 1e-8, |ctx, _| {
        // The ν-integrand is a projection, whatever (t, s) spans the eigenspace.
        // Constant maps stay well conditioned only at small ν. Absolute, since
        // the continuous part is small once discrete terms carry f.
        let params = base_params(ctx)?;
        let f = TestFunction::bump();
        let xs = [-0.6, 0.0, 0.9];
        let grid = NuGrid::new(0.2, 3.0, 0.25)?;
        let run = |maps| sample_transform_on(&params, &f, maps, grid.clone(), OdeOptions::default(), &xs);
        let a = run(SpectralMaps::Constant { t: c64(0.1, 0.0), s: c64(0.37, 0.2) })?;
        let b = run(primary_maps())?;
        let c = run(SpectralMaps::Orthogonal { t: c64(-0.2, 0.6) })?;
        let (max, n) = max_over(xs.iter().map(|&x| {
            let (va, vb, vc) = (a.continuous_part(x)?, b.continuous_part(x)?, c.continuous_part(x)?);
            Ok((va - vb).norm().max((vb - vc).norm()))
        }))?;
        Ok(Measurement::new(max, n))
    }));
    let discrete = cfg.params.is_some_and(|p| p.discrete_count() > 0);
    if discrete {
        checks.push(check("discrete_projection", 1e-8, |ctx, _| {
            let params = discrete_params(ctx)?;
            let hat = TestFunction::hat();
            let (max, n) = max_over((0..params.discrete_count()).map(|k| {
                let value = discrete_projection(&params, &hat, k)?;
                let norm = romanovski_norm_sq(&params, k)?;
                let oracle = midpoint(|x| Ok(hat.eval(x) * romanovski_theta(&params, k, x)?.conj()), -1.0, 1.0, 100_000)? / norm;
                Ok((value - oracle).norm() / oracle.norm().max(1.0))
            }))?;
            Ok(Measurement::new(max, n))
        }));
        checks.push(check("discrete_residual", 1e-3, |ctx, _| {
            // f minus the continuous part is the Romanovski projection.
            let params = discrete_params(ctx)?;
            let f = TestFunction::bump();
            let xs = reconstruction_grid();
            let sample = sample_transform(&params, &f, primary_maps(), spectrum(ctx), &xs)?;
            let coeffs = discrete_coefficients(&params, &f)?;
            let (max, n) = max_over(xs.iter().map(|&x| {
                let residual = f.eval(x) - sample.continuous_part(x)?;
                let projection: C64 =
                    coeffs.iter().enumerate().map(|(k, c)| Ok(c * romanovski_theta(&params, k, x)?)).sum::<Result<C64>>()?;
                Ok((residual - projection).norm())
            }))?;
            Ok(Measurement::new(max, n))
        }));
    }
    checks
}

fn plancherel_funcs() -> [TestFunction; 3] {
    [TestFunction::hat(), TestFunction::hat().shifted(1.8), TestFunction::cubic()]
}

fn plancherel_samples<'a>(ctx: &Context, cell: &'a Shared<Vec<TransformSample>>) -> Result<&'a Vec<TransformSample>> {
    shared(cell, || {
        let params = base_params(ctx)?;
        plancherel_funcs().iter().map(|f| sample_transform(&params, f, primary_maps(), spectrum(ctx), &[])).collect()
    })
}

pub(super) fn plancherel_checks() -> Vec<Check> {
    let cell: Shared<Vec<TransformSample>> = Arc::default();
    let pair = |name: &'static str, i: usize, j: usize| {
        let cell = Arc::clone(&cell);
        check(name, 1e-4, move |ctx, _| {
            let s = plancherel_samples(ctx, &cell)?;
            let f = plancherel_funcs();
            let exact = f[i].inner_product(&f[j]);
            let spectral = plancherel_pairing(&s[i], &s[j])?;
            Ok(Measurement::new((exact - spectral).norm() / (1.0 + exact.norm()), 1)
                .with_note(format!("exact {exact:.10}, spectral {spectral:.10}")))
        })
    };
    let symmetry = {
        let cell = Arc::clone(&cell);
        check("conjugate_symmetry", 1e-10, move |ctx, _| {
            let s = plancherel_samples(ctx, &cell)?;
            let (max, n) = max_over(
                [(0, 1), (0, 2), (1, 2)]
                    .into_iter()
                    .map(|(i, j)| Ok((plancherel_pairing(&s[i], &s[j])? - plancherel_pairing(&s[j], &s[i])?.conj()).norm())),
            )?;
            Ok(Measurement::new(max, n))
        })
    };
    vec![pair("hat_hat", 0, 0), pair("hat_shifted_hat", 0, 1), pair("hat_cubic", 0, 2), pair("shifted_hat_cubic", 1, 2), symmetry]
}

/// σ with 2σ and 2σ ± 2 at least 0.05 from the integers, and t.
fn difference_draw(rng: &mut ChaCha8Rng) -> Result<(C64, C64)> {
    loop {
        let sigma = c64(rng.gen_range(-0.4..0.7), rng.gen_range(-2.5..2.5));
        let two = 2.0 * sigma;
        if two.im.abs() > 0.05 || (two.re - two.re.round()).abs() > 0.05 {
            require_generic_sigma(sigma)?;
            return Ok((sigma, c64(rng.gen_range(-0.4..0.4), rng.gen_range(-0.3..0.3))));
        }
    }
}

pub(super) fn difference_checks() -> Vec<Check> {
    vec![
        check("kernel_identity", 1e-8, |ctx, rng| {
            // −ix·Φ(σ) = c₋Φ(σ−1) + c₀Φ(σ) + c₊Φ(σ+1)
            let params = base_params(ctx)?;
            let (max, n) = max_over((0..20).map(|_| {
                let (sigma, t) = difference_draw(rng)?;
                let x = rng.gen_range(-3.0..3.0);
                let [cm, c0, cp] = difference_coefficients(&params, sigma);
                let at = |s: C64| phi(&params, &SpectralPoint::new(s, t), x);
                let lhs = c64(0.0, -x) * at(sigma)?;
                let rhs = cm * at(sigma - 1.0)? + c0 * at(sigma)? + cp * at(sigma + 1.0)?;
                Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-300))
            }))?;
            Ok(Measurement::new(max, n))
        }),
        check("transform_identity", 1e-7, |ctx, rng| {
            // J(ix·f) = 𝒵 J(f) for the hat
            let params = base_params(ctx)?;
            let hat = TestFunction::hat();
            let ix_hat = hat.times_ix();
            let (max, n) = max_over((0..10).map(|_| {
                let (sigma, t) = difference_draw(rng)?;
                let lhs = forward_transform(&params, &ix_hat, &SpectralPoint::new(sigma, t))?;
                let rhs =
                    difference_operator_z(&params, |s, tt| forward_transform(&params, &hat, &SpectralPoint::new(s, tt)), sigma, t)?;
                Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
            }))?;
            Ok(Measurement::new(max, n))
        }),
        check("z_coefficients_conjugate", 1e-14, |ctx, rng| {
            let params = base_params(ctx)?;
            let (max, n) = max_over((0..20).map(|_| {
                let (sigma, _) = difference_draw(rng)?;
                let kernel = difference_coefficients(&params, sigma);
                let z = z_coefficients(&params, sigma)?;
                Ok((0..3).map(|j| rel_dev(z[j], kernel[j].conj(), 1.0)).fold(0.0, f64::max))
            }))?;
            Ok(Measurement::new(max, n))
        }),
    ]
}

pub(super) fn section4_checks() -> Vec<Check> {
    vec![
        check("closed_form_vs_quadrature", 1e-5, |ctx, _| {
            let params = base_params(ctx)?;
            let cases = [
                (c64(1.4, 0.0), c64(1.6, 0.0), SpectralPoint::new(c64(0.0, 0.4), c64(0.1, 0.0))),
                (c64(1.5, 0.2), c64(1.7, -0.1), SpectralPoint::new(c64(0.1, 0.8), c64(-0.2, 0.3))),
            ];
            let mut max = 0.0f64;
            let mut tail = 0.0f64;
            for (p, q, pt) in cases {
                let closed = closed_form_transform_power(&params, p, q, pt.sigma, pt.t)?;
                let quad = power_transform_quadrature(&params, p, q, &pt, 200.0)?;
                max = max.max((closed - quad.value).norm());
                tail = tail.max(quad.tail_bound);
            }
            Ok(Measurement::new(max, cases.len()).with_note(format!("tail bound {tail:.3e}")))
        }),
        check("q_reduction", 1e-9, |ctx, rng| {
            let params = base_params(ctx)?;
            let w = params.w();
            let (max, n) = max_over((0..10).map(|_| {
                let sigma = c64(rng.gen_range(-0.2..0.2), rng.gen_range(0.1..2.0));
                let t = c64(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
                let p = c64(rng.gen_range(1.3..2.0), rng.gen_range(-0.3..0.3));
                let general = closed_form_transform_power(&params, p, -w.conj() / 2.0, sigma, t)?;
                let reduced = closed_form_q_reduction(&params, p, sigma, t)?;
                Ok((general - reduced).norm() / (1.0 + reduced.norm()))
            }))?;
            Ok(Measurement::new(max, n))
        }),
        check("p_reduction", 1e-9, |ctx, rng| {
            let params = base_params(ctx)?;
            let w = params.w();
            let (max, n) = max_over((0..10).map(|_| {
                let sigma = c64(rng.gen_range(-0.2..0.2), rng.gen_range(0.1..2.0));
                let t = c64(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
                let q = c64(rng.gen_range(1.3..2.0), rng.gen_range(-0.3..0.3));
                let general = closed_form_transform_power(&params, w / 2.0, q, sigma, t)?;
                let reduced = closed_form_p_reduction(&params, q, sigma, t)?;
                Ok((general - reduced).norm() / (1.0 + reduced.norm()))
            }))?;
            Ok(Measurement::new(max, n))
        }),
        check("beta_integral", 1e-9, |_, rng| {
            // quadrature in y = arcsinh 2x over |y| ≤ 40, tails ~e^{−40(Re(μ+ν)−1)}
            let breaks: Vec<f64> = (0..=16).map(|j| -40.0 + 5.0 * j as f64).collect();
            let (max, n) = max_over((0..5).map(|_| {
                let mu = c64(rng.gen_range(0.9..2.0), rng.gen_range(-0.5..0.5));
                let nu = c64(rng.gen_range(0.9..2.0), rng.gen_range(-0.5..0.5));
                let quad = integrate_pieces(|y| power_function(mu, nu, 0.5 * y.sinh()) * (0.5 * y.cosh()), &breaks, QuadOptions::default())?;
                Ok(rel_dev(quad.value, beta_integral(mu, nu)?, 1e-300))
            }))?;
            Ok(Measurement::new(max, n))
        }),
    ]
}
