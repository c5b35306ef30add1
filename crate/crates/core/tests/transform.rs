use hyperindex::eigen::{phi, romanovski_theta, Params, SpectralPoint};
use hyperindex::error::Error;
use hyperindex::ode::OdeOptions;
use hyperindex::quad::{integrate_pieces, QuadOptions};
use hyperindex::transform::*;
use hyperindex::{c64, C64};
use proptest::prelude::*;

fn base() -> Params {
    Params::new(0.3, 0.7).unwrap()
}

fn grid_41() -> Vec<f64> {
    (0..41).map(|k| -2.0 + 0.1 * k as f64).collect()
}

fn max_error(sample: &TransformSample, f: &TestFunction, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| (inverse_transform(sample, x).unwrap() - f.eval(x)).norm()).fold(0.0, f64::max)
}

/// Hat of half-width 1 centred at `centre`.
fn shifted_hat(centre: f64) -> TestFunction {
    TestFunction::new(
        "shifted-hat",
        vec![
            Piece { a: centre - 1.0, b: centre, coeffs: vec![c64(1.0 - centre, 0.0), c64(1.0, 0.0)] },
            Piece { a: centre, b: centre + 1.0, coeffs: vec![c64(1.0 + centre, 0.0), c64(-1.0, 0.0)] },
        ],
    )
    .unwrap()
}

/// Midpoint rule with n cells over supp f; every kink lies on a cell edge
/// for the presets used here.
fn riemann<F: Fn(f64) -> C64>(g: F, a: f64, b: f64, n: usize) -> C64 {
    let h = (b - a) / n as f64;
    (0..n).map(|k| g(a + (k as f64 + 0.5) * h) * h).sum()
}

#[test]
fn test_functions_are_validated_and_exact() {
    assert!(TestFunction::new("bad", vec![Piece { a: 1.0, b: 0.0, coeffs: vec![c64(1.0, 0.0)] }]).is_err());
    assert!(TestFunction::preset("nope").is_err());
    for name in PRESET_NAMES {
        let f = TestFunction::preset(name).unwrap();
        let quad = integrate_pieces(|x| f.eval(x) * f.eval(x).conj(), &f.breakpoints(), QuadOptions::default()).unwrap();
        assert!((quad.value.re - f.norm_sq()).abs() < 1e-12, "{name}");
    }
    assert!((TestFunction::hat().norm_sq() - 2.0 / 3.0).abs() < 1e-15);
    assert!((TestFunction::hat().eval(0.25).re - 0.75).abs() < 1e-15);
    assert_eq!(TestFunction::hat().eval(1.5), c64(0.0, 0.0));
    let bump = TestFunction::bump();
    let h = 1e-6;
    for knot in [-0.5, 0.5] {
        let left = (bump.eval(knot) - bump.eval(knot - h)).re / h;
        let right = (bump.eval(knot + h) - bump.eval(knot)).re / h;
        assert!((left - right).abs() < 1e-5, "bump is C¹ at {knot}");
    }
    let hat = TestFunction::hat();
    let ix = hat.times_ix();
    assert!((ix.eval(0.5) - c64(0.0, 0.25)).norm() < 1e-15);
    let overlap = hat.inner_product(&shifted_hat(1.8));
    for x in [0.3, 0.9, 1.8, 2.5] {
        assert!((hat.shifted(1.8).eval(x) - shifted_hat(1.8).eval(x)).norm() < 1e-15);
    }
    assert!((overlap.re - 0.2f64.powi(3) / 6.0).abs() < 1e-15);
}

#[test]
fn forward_of_zero_is_zero() {
    let pt = SpectralPoint::new(c64(0.0, 0.4), c64(0.1, 0.0));
    assert_eq!(forward_transform(&base(), &TestFunction::zero(), &pt).unwrap(), c64(0.0, 0.0));
}

#[test]
fn forward_is_linear() {
    let params = base();
    let (f, g) = (TestFunction::hat(), TestFunction::cubic());
    let (a, b) = (c64(0.7, -1.1), c64(-0.2, 0.4));
    let combo = f.scaled(a).sum(&g.scaled(b));
    for (sigma, t) in [(c64(0.0, 0.4), c64(0.1, 0.0)), (c64(0.3, 1.2), c64(-0.2, 0.5))] {
        let pt = SpectralPoint::new(sigma, t);
        let lhs = forward_transform(&params, &combo, &pt).unwrap();
        let rhs = a * forward_transform(&params, &f, &pt).unwrap()
            + b * forward_transform(&params, &g, &pt).unwrap();
        assert!((lhs - rhs).norm() < 1e-11 * (1.0 + lhs.norm()));
    }
}

#[test]
fn forward_hat_matches_riemann_sum() {
    let params = base();
    let hat = TestFunction::hat();
    let pt = SpectralPoint::new(c64(0.0, 0.4), c64(0.1, 0.0));
    let value = forward_transform(&params, &hat, &pt).unwrap();
    let oracle = riemann(|x| hat.eval(x) * phi(&params, &pt, x).unwrap().conj(), -1.0, 1.0, 100_000);
    assert!((value - oracle).norm() < 1e-8, "{value} vs {oracle}");
}

#[test]
fn forward_is_holomorphic_in_conjugate_arguments() {
    let params = base();
    let f = TestFunction::bump();
    let h = 1e-4;
    for (sigma, t) in [(c64(0.2, 0.4), c64(0.1, 0.0)), (c64(-0.3, 1.1), c64(0.25, -0.3))] {
        let at = |s: C64, tt: C64| forward_transform(&params, &f, &SpectralPoint::new(s, tt)).unwrap();
        // g(z) = F(z̄) is holomorphic: its real and imaginary difference
        // quotients agree. Moving z by ih moves σ by −ih.
        let real_dir = (at(sigma + h, t) - at(sigma - h, t)) / (2.0 * h);
        let imag_dir = (at(sigma - c64(0.0, h), t) - at(sigma + c64(0.0, h), t)) / c64(0.0, 2.0 * h);
        assert!((real_dir - imag_dir).norm() < 1e-6, "σ: {real_dir} vs {imag_dir}");
        let real_t = (at(sigma, t + h) - at(sigma, t - h)) / (2.0 * h);
        let imag_t = (at(sigma, t - c64(0.0, h)) - at(sigma, t + c64(0.0, h))) / c64(0.0, 2.0 * h);
        assert!((real_t - imag_t).norm() < 1e-6, "t: {real_t} vs {imag_t}");
        // and it is not holomorphic in σ itself
        let wrong = (at(sigma + c64(0.0, h), t) - at(sigma - c64(0.0, h), t)) / c64(0.0, 2.0 * h);
        assert!((real_dir - wrong).norm() > 1e-3);
    }
}

#[test]
fn jost_spectrum_matches_adaptive_forward() {
    let params = base();
    let f = TestFunction::cubic();
    let nus = vec![0.5, 2.0, 4.0];
    let grid = NuGrid { nodes: nus.clone(), weights: vec![1.0; 3], panel_width: 0.1, eps: 1e-3, nu_max: 40.0 };
    for maps in [SpectralMaps::Orthogonal { t: c64(0.1, 0.0) }, SpectralMaps::Constant { t: c64(0.1, 0.0), s: c64(0.37, 0.2) }] {
        let sample = sample_transform_on(&params, &f, maps, grid.clone(), OdeOptions::default(), &[]).unwrap();
        for node in &sample.nodes {
            for (label, value) in [(node.t, node.f_t), (node.s, node.f_s)] {
                let pt = SpectralPoint::continuous(node.nu, label).unwrap();
                let direct = forward_transform(&params, &f, &pt).unwrap();
                assert!((value - direct).norm() < 1e-8 * (1.0 + direct.norm()), "ν = {}: {value} vs {direct}", node.nu);
            }
        }
    }
}

#[test]
fn orthogonal_maps_have_diagonal_density() {
    let params = base();
    let maps = SpectralMaps::Orthogonal { t: c64(0.37, 0.2) };
    let grid = NuGrid::new(0.5, 20.0, 2.0).unwrap();
    let sample = sample_transform_on(&params, &TestFunction::hat(), maps, grid, OdeOptions::default(), &[]).unwrap();
    for node in &sample.nodes {
        let r = node.density;
        assert!(r.m12.norm() <= 1e-12 * r.max_abs() && r.m21.norm() <= 1e-12 * r.max_abs(), "ν = {}", node.nu);
    }
}

#[test]
fn spectral_integrand_is_basis_independent() {
    // At each ν the integrand is the projection onto a 2-dimensional
    // eigenspace, whatever basis (t, s) spans it. Constant maps are only
    // resolvable at small ν.
    let params = base();
    let f = TestFunction::bump();
    let xs = [-0.6, 0.0, 0.9];
    let grid = NuGrid::new(0.2, 3.0, 0.25).unwrap();
    let run = |maps| sample_transform_on(&params, &f, maps, grid.clone(), OdeOptions::default(), &xs).unwrap();
    let a = run(SpectralMaps::Constant { t: c64(0.1, 0.0), s: c64(0.37, 0.2) });
    let b = run(SpectralMaps::Orthogonal { t: c64(0.1, 0.0) });
    let c = run(SpectralMaps::Orthogonal { t: c64(-0.2, 0.6) });
    for x in xs {
        let (va, vb, vc) = (a.continuous_part(x).unwrap(), b.continuous_part(x).unwrap(), c.continuous_part(x).unwrap());
        assert!((va - vb).norm() < 1e-8 && (vb - vc).norm() < 1e-8, "x = {x}: {va} {vb} {vc}");
    }
}

#[test]
fn round_trip_of_smooth_functions() {
    let params = base();
    let xs = grid_41();
    for f in [TestFunction::bump(), TestFunction::cubic()] {
        let a = sample_transform(&params, &f, SpectralMaps::Orthogonal { t: c64(0.1, 0.0) }, SpectrumOptions::default(), &xs).unwrap();
        let b = sample_transform(&params, &f, SpectralMaps::Orthogonal { t: c64(0.37, 0.2) }, SpectrumOptions::default(), &xs)
            .unwrap();
        assert!(max_error(&a, &f, &xs) < 1e-3, "{}", f.name());
        assert!(max_error(&b, &f, &xs) < 1e-3, "{}", f.name());
        let spread =
            xs.iter().map(|&x| (inverse_transform(&a, x).unwrap() - inverse_transform(&b, x).unwrap()).norm()).fold(0.0, f64::max);
        assert!(spread < 1e-3, "{}: {spread}", f.name());
    }
}

#[test]
fn hat_round_trip_error_is_truncation_at_the_kinks() {
    // The hat transform decays like ν⁻², so the ν_max cut leaves an error of
    // order 1/ν_max at the kinks and less elsewhere.
    let params = base();
    let f = TestFunction::hat();
    let xs = [-1.6, -1.0, 0.0, 0.5, 1.0, 1.7];
    let maps = SpectralMaps::Orthogonal { t: c64(0.1, 0.0) };
    let short = sample_transform(&params, &f, maps, SpectrumOptions { nu_max: 20.0, ..Default::default() }, &xs).unwrap();
    let long = sample_transform(&params, &f, maps, SpectrumOptions::default(), &xs).unwrap();
    let err = |s: &TransformSample, x: f64| (inverse_transform(s, x).unwrap() - f.eval(x)).norm();
    let ratio = err(&short, 1.0) / err(&long, 1.0);
    assert!(ratio > 1.7 && ratio < 2.3, "kink error ratio {ratio}");
    assert!(err(&long, 0.5) < err(&long, 0.0));
}

#[test]
fn unresolvable_points_are_rejected() {
    let params = base();
    let sample =
        sample_transform(&params, &TestFunction::hat(), SpectralMaps::Orthogonal { t: c64(0.1, 0.0) }, SpectrumOptions { nu_max: 2.0, ..Default::default() }, &[0.0])
            .unwrap();
    assert!(matches!(inverse_transform(&sample, 10.0), Err(Error::Resolution(_))));
    assert!(inverse_transform(&sample, 0.3).is_ok(), "points off the stored set are recomputed");
    assert!(matches!(
        sample_transform(&params, &TestFunction::hat(), SpectralMaps::Constant { t: c64(0.1, 0.0), s: c64(1.1, 0.0) }, SpectrumOptions::default(), &[]),
        Err(Error::Degenerate(_))
    ));
    assert!(NuGrid::new(1.0, 0.5, 0.25).is_err());
}

#[test]
fn plancherel_matches_exact_inner_products() {
    let params = base();
    let maps = SpectralMaps::Orthogonal { t: c64(0.1, 0.0) };
    let funcs = [TestFunction::hat(), shifted_hat(1.8), TestFunction::cubic()];
    let samples: Vec<_> = funcs.iter().map(|f| sample_transform(&params, f, maps, SpectrumOptions::default(), &[]).unwrap()).collect();
    for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 2)] {
        let lhs = funcs[i].inner_product(&funcs[j]);
        let rhs = plancherel_pairing(&samples[i], &samples[j]).unwrap();
        assert!((lhs - rhs).norm() < 1e-4 * (1.0 + lhs.norm()), "({i},{j}): {lhs} vs {rhs}");
        let swapped = plancherel_pairing(&samples[j], &samples[i]).unwrap();
        assert!((rhs - swapped.conj()).norm() < 1e-10);
    }
    let other = sample_transform(&params, &funcs[0], SpectralMaps::Orthogonal { t: c64(0.3, 0.0) }, SpectrumOptions::default(), &[]).unwrap();
    assert!(plancherel_pairing(&samples[0], &other).is_err());
}

#[test]
fn discrete_projection_matches_riemann_sum() {
    let params = Params::new(1.8, 0.5).unwrap();
    let hat = TestFunction::hat();
    for k in 0..2 {
        let value = discrete_projection(&params, &hat, k).unwrap();
        let norm = hyperindex::eigen::romanovski_norm_sq(&params, k).unwrap();
        let oracle = riemann(|x| hat.eval(x) * romanovski_theta(&params, k, x).unwrap().conj(), -1.0, 1.0, 100_000) / norm;
        assert!((value - oracle).norm() < 1e-8, "k = {k}: {value} vs {oracle}");
    }
    assert_eq!(discrete_projection(&params, &TestFunction::zero(), 0).unwrap(), c64(0.0, 0.0));
    assert!(matches!(discrete_projection(&params, &hat, 2), Err(Error::Range(_))));
}

#[test]
fn discrete_projection_recovers_truncated_romanovski_function() {
    // Piecewise-linear interpolant of Θ⁰ on |x| ≤ 60; Θ⁰ ~ |x|^{−α}, so the
    // cut and the interpolation cost ~1e-4 in the coefficient.
    let params = Params::new(1.8, 0.5).unwrap();
    let (half_width, pieces) = (60.0, 2400);
    let h = 2.0 * half_width / pieces as f64;
    let knots: Vec<f64> = (0..=pieces).map(|j| -half_width + h * j as f64).collect();
    let values: Vec<C64> = knots.iter().map(|&x| romanovski_theta(&params, 0, x).unwrap()).collect();
    let linear = (0..pieces)
        .map(|j| {
            let slope = (values[j + 1] - values[j]) / h;
            Piece { a: knots[j], b: knots[j + 1], coeffs: vec![values[j] - slope * knots[j], slope] }
        })
        .collect();
    let f = TestFunction::new("theta0", linear).unwrap();
    let c0 = discrete_projection(&params, &f, 0).unwrap();
    let c1 = discrete_projection(&params, &f, 1).unwrap();
    assert!((c0 - 1.0).norm() < 5e-3, "c₀ = {c0}");
    assert!(c1.norm() < 5e-3, "c₁ = {c1}");
}

#[test]
fn discrete_mode_round_trip_needs_romanovski_terms() {
    let params = Params::new(1.8, 0.5).unwrap();
    let f = TestFunction::bump();
    let xs = grid_41();
    let sample = sample_transform(&params, &f, SpectralMaps::Orthogonal { t: c64(0.1, 0.0) }, SpectrumOptions::default(), &xs).unwrap();
    assert_eq!(sample.discrete.len(), 2);
    let coeffs = discrete_coefficients(&params, &f).unwrap();
    let mut worst: f64 = 0.0;
    let mut residual_gap: f64 = 0.0;
    let mut discrete_size: f64 = 0.0;
    for &x in &xs {
        let full = inverse_transform(&sample, x).unwrap();
        worst = worst.max((full - f.eval(x)).norm());
        let residual = f.eval(x) - sample.continuous_part(x).unwrap();
        let projection: C64 = coeffs.iter().enumerate().map(|(k, c)| c * romanovski_theta(&params, k, x).unwrap()).sum();
        residual_gap = residual_gap.max((residual - projection).norm());
        discrete_size = discrete_size.max(projection.norm());
    }
    assert!(worst < 1e-3, "{worst}");
    assert!(residual_gap < 1e-3, "{residual_gap}");
    assert!(discrete_size > 0.1, "the discrete part is not negligible");
}

#[test]
fn difference_operator_intertwines_multiplication() {
    let params = base();
    let hat = TestFunction::hat();
    let ix_hat = hat.times_ix();
    let points = [
        (c64(0.7, 0.2), c64(0.1, 0.0)),
        (c64(0.0, 1.3), c64(0.3, 0.2)),
        (c64(0.2, 0.5), c64(-0.4, 0.1)),
        (c64(-0.35, 2.0), c64(0.0, -0.3)),
    ];
    for (sigma, t) in points {
        let lhs = forward_transform(&params, &ix_hat, &SpectralPoint::new(sigma, t)).unwrap();
        let rhs = difference_operator_z(&params, |s, tt| forward_transform(&params, &hat, &SpectralPoint::new(s, tt)), sigma, t).unwrap();
        assert!((lhs - rhs).norm() < 1e-7 * (1.0 + lhs.norm()), "σ = {sigma}: {lhs} vs {rhs}");
    }
}

#[test]
fn difference_coefficients_structure() {
    for params in [Params::new(0.0, 0.7).unwrap(), Params::new(0.3, 0.0).unwrap()] {
        let [_, middle, _] = z_coefficients(&params, c64(0.3, 0.8)).unwrap();
        assert_eq!(middle, c64(0.0, 0.0));
    }
    for sigma in [c64(0.0, 0.0), c64(0.5, 0.0), c64(-0.5, 0.0)] {
        assert!(matches!(z_coefficients(&base(), sigma), Err(Error::Pole(_))));
    }
    // z-coefficients are the unconjugated kernel coefficients, conjugated
    let sigma = c64(0.3, 0.8);
    let kernel = hyperindex::eigen::difference_coefficients(&base(), sigma);
    let z = z_coefficients(&base(), sigma).unwrap();
    for j in 0..3 {
        assert!((kernel[j].conj() - z[j]).norm() < 1e-14);
    }
}

#[test]
fn power_closed_form_matches_truncated_quadrature() {
    let params = base();
    let pt = SpectralPoint::new(c64(0.0, 0.4), c64(0.1, 0.0));
    let (p, q) = (c64(1.4, 0.0), c64(1.6, 0.0));
    let closed = closed_form_transform_power(&params, p, q, pt.sigma, pt.t).unwrap();
    let quad = power_transform_quadrature(&params, p, q, &pt, 200.0).unwrap();
    assert!(quad.tail_bound < 1e-5);
    assert!((closed - quad.value).norm() < 1e-5, "{closed} vs {:?}", quad);
    assert!((closed - quad.value).norm() <= quad.tail_bound + 1e-8);
}

#[test]
fn power_closed_form_reductions() {
    let params = base();
    let w = params.w();
    for (sigma, t) in [(c64(0.0, 0.4), c64(0.1, 0.0)), (c64(0.1, 1.3), c64(-0.2, 0.3))] {
        let general = closed_form_transform_power(&params, c64(1.6, 0.0), -w.conj() / 2.0, sigma, t).unwrap();
        let reduced = closed_form_q_reduction(&params, c64(1.6, 0.0), sigma, t).unwrap();
        assert!((general - reduced).norm() < 1e-9 * (1.0 + reduced.norm()), "{general} vs {reduced}");
        let general = closed_form_transform_power(&params, w / 2.0, c64(1.3, 0.0), sigma, t).unwrap();
        let reduced = closed_form_p_reduction(&params, c64(1.3, 0.0), sigma, t).unwrap();
        assert!((general - reduced).norm() < 1e-9 * (1.0 + reduced.norm()), "{general} vs {reduced}");
    }
}

#[test]
fn beta_integral_closed_form() {
    let two_pi = 2.0 * std::f64::consts::PI;
    assert!((beta_integral(c64(1.0, 0.0), c64(1.0, 0.0)).unwrap() - two_pi).norm() < 1e-14);
    assert!((beta_integral(c64(2.0, 0.0), c64(1.0, 0.0)).unwrap() - two_pi).norm() < 1e-14);
    assert!(matches!(beta_integral(c64(0.5, 0.0), c64(0.5, 0.0)), Err(Error::Divergence(_))));
    // quadrature in y = arcsinh 2x over |y| ≤ 40, tails ~e^{−40(Re(μ+ν)−1)}
    for (mu, nu) in [(c64(2.0, 0.0), c64(1.0, 0.0)), (c64(1.3, 0.4), c64(0.9, -0.2))] {
        let breaks: Vec<f64> = (0..=16).map(|j| -40.0 + 5.0 * j as f64).collect();
        let q = integrate_pieces(
            |y| {
                let x = 0.5 * f64::sinh(y);
                power_function(mu, nu, x) * 0.5 * y.cosh()
            },
            &breaks,
            QuadOptions::default(),
        )
        .unwrap();
        let closed = beta_integral(mu, nu).unwrap();
        assert!((q.value - closed).norm() < 1e-9, "{} vs {closed}", q.value);
    }
    let (mu, nu) = (c64(1.2, 0.3), c64(0.8, -0.5));
    let swapped = beta_integral(nu.conj(), mu.conj()).unwrap();
    assert!((beta_integral(mu, nu).unwrap().conj() - swapped).norm() < 1e-13);
    let real = beta_integral(mu, mu.conj()).unwrap();
    assert!(real.im.abs() < 1e-13 && real.re > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_product_is_sesquilinear(ar in -2.0..2.0f64, ai in -2.0..2.0f64, shift in -2.5..2.5f64) {
        let a = c64(ar, ai);
        let f = TestFunction::bump();
        let g = shifted_hat(shift);
        let lhs = f.scaled(a).inner_product(&g);
        prop_assert!((lhs - a * f.inner_product(&g)).norm() < 1e-13);
        prop_assert!((f.inner_product(&g) - g.inner_product(&f).conj()).norm() < 1e-14);
        let sum = f.sum(&g);
        prop_assert!((sum.norm_sq() - (f.norm_sq() + g.norm_sq() + 2.0 * f.inner_product(&g).re)).abs() < 1e-13);
    }

    #[test]
    fn forward_transform_linearity(ar in -2.0..2.0f64, ai in -2.0..2.0f64, nu in 0.1..4.0f64) {
        let params = base();
        let a = c64(ar, ai);
        let f = TestFunction::hat().scaled(a).sum(&TestFunction::cubic());
        let pt = SpectralPoint::continuous(nu, c64(0.1, 0.0)).unwrap();
        let lhs = forward_transform(&params, &f, &pt).unwrap();
        let rhs = a * forward_transform(&params, &TestFunction::hat(), &pt).unwrap()
            + forward_transform(&params, &TestFunction::cubic(), &pt).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }
}
