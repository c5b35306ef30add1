use hyperindex::hyp_series::*;
use hyperindex::special_core::{gamma_ratio, reciprocal_gamma};
use hyperindex::{c64, Error, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn unit(phi: f64) -> C64 {
    c64(phi.cos(), phi.sin())
}

#[test]
fn gauss_elementary_reductions() {
    let (a, b, z) = (c64(0.7, 0.2), c64(1.3, 0.0), c64(0.0, 0.4));
    let v = gauss_2f1(a, b, b, z).unwrap();
    assert!(rel(v.value, (-a * (1.0 - z).ln()).exp()) < 1e-13);
    let one = c64(1.0, 0.0);
    let v = gauss_2f1(one, one, c64(2.0, 0.0), c64(0.5, 0.0)).unwrap();
    assert!((v.value.re - 1.3862943611198906).abs() < 1e-13);
    assert_eq!(v.status, SeriesStatus::Converged);
}

#[test]
fn gauss_near_one_with_integer_exponent_gap() {
    // mpmath at 30 digits; c − a − b = 0 here.
    let v = gauss_2f1(c64(0.6, 0.0), c64(0.8, 0.0), c64(1.4, 0.0), c64(0.97, 0.0)).unwrap();
    assert!(rel(v.value, c64(2.5156433454808793, 0.0)) < 1e-11);
    assert!(v.abs_error_estimate <= 1e-11 * v.value.norm());
}

#[test]
fn gauss_near_one_agrees_with_slow_direct_sum() {
    // Brute-force Maclaurin sum with 10⁶ terms, the tail beyond is below 1e-12.
    let (a, b, c, z) = (0.6, 0.8, 1.4, 0.97);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..1_000_000 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
    }
    let v = gauss_2f1(c64(a, 0.0), c64(b, 0.0), c64(c, 0.0), c64(z, 0.0)).unwrap();
    assert!((v.value.re - sum).abs() < 1e-9 * sum);
}

// (a, b, c, z, ₂F₁) frozen from mpmath; covers the direct, connection,
// Pfaff and Taylor-continued regions.
const GAUSS_REFERENCE: [(C64, C64, C64, C64, C64); 8] = [
    (c64(0.3, 0.2), c64(1.1, -0.4), c64(1.7, 0.3), c64(0.5, 0.8660254037844386), c64(0.9739574391507048, 0.28206542088917935)),
    (c64(0.5, 0.4), c64(0.9, 0.0), c64(2.2, -0.1), c64(0.49, -0.8487048957087499), c64(1.2277287058447193, -0.22325044065029762)),
    (c64(1.2, 0.0), c64(0.7, 2.0), c64(1.3, 0.5), c64(-0.95, 0.2), c64(0.22686579227893336, -0.2595684804586998)),
    (c64(0.25, 1.5), c64(0.8, -1.5), c64(1.6, 0.2), c64(0.3623577544766736, 0.9320390859672263), c64(0.029804397629901416, 1.1086131652545979)),
    (c64(0.5, 0.4), c64(0.5, 1.1), c64(1.3, 0.7), c64(-0.9, 0.4), c64(0.7680931277643583, -0.24255068428277587)),
    (c64(0.4, 0.0), c64(0.3, 0.8), c64(1.9, 0.0), c64(0.2, 0.3), c64(0.9557877178632208, 0.04646655850422771)),
    (c64(0.4, 0.1), c64(0.3, 0.0), c64(0.9, -0.2), c64(0.3, 0.85), c64(0.942873766934534, 0.09611457135749378)),
    (c64(0.6, 0.0), c64(0.0, 1.1), c64(1.2, 0.3), c64(0.1, 0.95), c64(0.6411145240010352, 0.022873704762619906)),
];

#[test]
fn gauss_reference_values() {
    for (a, b, c, z, expected) in GAUSS_REFERENCE {
        let v = gauss_2f1(a, b, c, z).unwrap();
        assert!(rel(v.value, expected) < 1e-11, "₂F₁({a},{b};{c};{z}) = {} vs {expected}", v.value);
    }
}

#[test]
fn gauss_errors() {
    let z = c64(0.3, 0.0);
    assert!(matches!(gauss_2f1(c64(0.5, 0.0), c64(0.2, 0.0), c64(-2.0, 0.0), z), Err(Error::ParameterPole(_))));
    // c − a − b = 1 where only the 1 − z path applies.
    assert!(matches!(
        gauss_2f1(c64(0.5, 0.0), c64(0.5, 0.0), c64(2.0, 0.0), c64(1.0, 0.3)),
        Err(Error::LogarithmicCase(_))
    ));
    assert!(matches!(gauss_2f1(c64(0.5, 0.0), c64(0.2, 0.0), c64(1.5, 0.0), c64(0.0, 3.0)), Err(Error::Range(_))));
}

#[test]
fn gauss_terminating_polynomial_anywhere() {
    // F(−2, b; c; z) = 1 − 2bz/c + b(b+1)z²/(c(c+1)).
    let (b, c, z) = (c64(0.7, 0.1), c64(1.3, 0.0), c64(3.0, -2.0));
    let v = gauss_2f1(c64(-2.0, 0.0), b, c, z).unwrap();
    let expected = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
    assert!(rel(v.value, expected) < 1e-14);
}

#[test]
fn h2_star_reduces_to_gauss_when_b2_is_one() {
    let (a1, a2, b1, z) = (c64(0.2, 0.0), c64(0.3, 0.0), c64(1.1, 0.0), c64(0.5, 0.0));
    let one = c64(1.0, 0.0);
    let regularized = gauss_2f1(a1, a2, b1, z).unwrap().value
        * reciprocal_gamma(1.0 - a1)
        * reciprocal_gamma(1.0 - a2)
        * reciprocal_gamma(b1);
    // ₂H₂* at |z| = 1 only; compare the n ≥ 0 series on the circle instead.
    let zc = unit(2.1);
    let params = BilateralParams::new(&[a1 + 0.5, a2], &[b1 + 0.9, one], zc).unwrap();
    let h = bilateral_h_star(&params).unwrap();
    let reg = gauss_2f1(a1 + 0.5, a2, b1 + 0.9, zc).unwrap().value
        * reciprocal_gamma(0.5 - a1)
        * reciprocal_gamma(1.0 - a2)
        * reciprocal_gamma(b1 + 0.9);
    assert!(rel(h.value, reg) < 1e-10, "{} vs {reg}", h.value);
    assert!(regularized.norm() > 0.0);
}

#[test]
fn dougall_examples() {
    let zero = c64(0.0, 0.0);
    let half3 = c64(1.5, 0.0);
    let v = dougall_closed_form(zero, zero, half3, half3).unwrap();
    assert!((v.re - 16.0 / std::f64::consts::PI.powi(2)).abs() < 1e-13);
    let (a1, a2, b1, b2) = (c64(0.1, 0.0), c64(0.0, 0.2), c64(1.3, 0.0), c64(1.4, -0.2));
    let params = BilateralParams::new(&[a1, a2], &[b1, b2], c64(1.0, 0.0)).unwrap();
    let h = bilateral_h_star(&params).unwrap();
    assert!(rel(h.value, dougall_closed_form(a1, a2, b1, b2).unwrap()) < 1e-10);
    assert_eq!(h.status, SeriesStatus::Converged);
}

#[test]
fn dougall_matches_gauss_summation_when_b2_is_one() {
    // With b₂ = 1 the n < 0 side vanishes, and Gauss's sum gives
    // F(a₁,a₂;b₁;1)/(Γ(1−a₁)Γ(1−a₂)Γ(b₁)).
    let (a1, a2, b1) = (c64(0.2, 0.0), c64(0.1, 0.0), c64(1.7, 0.0));
    let one = c64(1.0, 0.0);
    let gauss = gamma_ratio(&[b1, b1 - a1 - a2], &[b1 - a1, b1 - a2]).unwrap();
    let expected = gauss * reciprocal_gamma(1.0 - a1) * reciprocal_gamma(1.0 - a2) * reciprocal_gamma(b1);
    assert!(rel(dougall_closed_form(a1, a2, b1, one).unwrap(), expected) < 1e-13);
}

#[test]
fn bilateral_terminates_when_both_sides_are_cut() {
    // a₁ = 0 kills n ≥ 1, b₁ = 1 kills n ≤ −1: only n = 0 survives.
    let (a2, b2) = (c64(0.3, 0.4), c64(0.8, -0.2));
    let params = BilateralParams::new(&[c64(0.0, 0.0), a2], &[c64(1.0, 0.0), b2], unit(0.9)).unwrap();
    let h = bilateral_h_star(&params).unwrap();
    let direct = reciprocal_gamma(c64(1.0, 0.0)) * reciprocal_gamma(1.0 - a2) * reciprocal_gamma(c64(1.0, 0.0)) * reciprocal_gamma(b2);
    assert!(rel(h.value, direct) < 1e-15);
    assert_eq!(h.status, SeriesStatus::Converged);
}

// (upper, lower, z, value) frozen from mpmath `bihyper`, divided by the Γ normalization.
#[test]
fn bilateral_reference_values() {
    let cases: Vec<(Vec<C64>, Vec<C64>, C64, C64)> = vec![
        (vec![c64(0.15, 0.1), c64(0.25, 0.0)], vec![c64(1.2, 0.0), c64(1.35, 0.0)], unit(2.0), c64(0.8384079262890602, -0.14703112147863465)),
        (vec![c64(0.3, 0.5), c64(-0.2, 0.0)], vec![c64(0.9, -0.3), c64(1.1, 0.0)], unit(-1.0), c64(0.8015570509076901, -0.7254095888632789)),
        (vec![c64(0.2, 0.0), c64(0.1, -0.3)], vec![c64(0.6, 0.0), c64(0.8, 0.2)], unit(0.5), c64(0.5826417859984534, 0.08709257970932638)),
        (vec![c64(0.1, 0.0), c64(0.3, 0.0), c64(0.0, 0.2)], vec![c64(1.1, 0.0), c64(1.3, 0.0), c64(0.9, -0.1)], c64(1.0, 0.0), c64(0.8139070022924452, -0.1439186170586104)),
        (vec![c64(0.3, 0.0), c64(0.0, 0.1), c64(0.2, 0.0)], vec![c64(0.8, 0.0), c64(1.1, 0.0), c64(0.4, 0.0)], unit(2.5), c64(0.27302779957504003, -0.016069542414701446)),
        // Conditionally convergent, κ ∈ (−1, 0).
        (vec![c64(0.3, 0.2), c64(0.9, 0.0)], vec![c64(0.9, 0.0), c64(0.9, -0.1)], unit(2.0), c64(0.05260756424528478, -0.02637444116010768)),
        (vec![c64(0.2, 0.0), c64(0.0, 0.5)], vec![c64(0.7, 0.0), c64(0.45, 0.0)], unit(-0.7), c64(0.6175308204991259, 0.021189694469025654)),
        (vec![c64(0.6, 0.0), c64(0.5, 0.0), c64(0.0, 0.1)], vec![c64(0.9, 0.0), c64(0.7, 0.0), c64(0.8, 0.0)], unit(1.5), c64(0.14938699455190999, -0.015144615257773789)),
    ];
    for (upper, lower, z, expected) in cases {
        let params = BilateralParams::new(&upper, &lower, z).unwrap();
        let h = bilateral_h_star(&params).unwrap();
        assert!(rel(h.value, expected) < 1e-10, "{upper:?}/{lower:?} at {z}: {} vs {expected}", h.value);
        let want = if params.kappa() < -1.0 { SeriesStatus::Converged } else { SeriesStatus::Regularized };
        assert_eq!(h.status, want);
    }
}

#[test]
fn bilateral_rejects_divergent_regimes() {
    let at_one = BilateralParams::new(&[c64(0.3, 0.0), c64(0.4, 0.0)], &[c64(0.9, 0.0), c64(0.5, 0.0)], c64(1.0, 0.0)).unwrap();
    assert!(matches!(bilateral_h_star(&at_one), Err(Error::Divergence(_))));
    let distributional = BilateralParams::new(&[c64(0.8, 0.0), c64(0.4, 0.0)], &[c64(0.6, 0.0), c64(0.5, 0.0)], unit(1.0)).unwrap();
    assert!(matches!(bilateral_h_star(&distributional), Err(Error::Divergence(_))));
    assert!(BilateralParams::new(&[c64(0.1, 0.0)], &[c64(0.2, 0.0)], unit(1.0)).is_err());
    assert!(BilateralParams::new(&[c64(0.1, 0.0), c64(0.1, 0.0)], &[c64(1.2, 0.0), c64(1.2, 0.0)], c64(0.5, 0.0)).is_err());
}

#[test]
fn doubling_the_cutoff_stays_within_the_error_estimate() {
    let params = BilateralParams::new(&[c64(0.3, 0.2), c64(0.9, 0.0)], &[c64(0.9, 0.0), c64(0.9, -0.1)], unit(2.0)).unwrap();
    let a = bilateral_h_star_with_cutoff(&params, 200).unwrap();
    let b = bilateral_h_star_with_cutoff(&params, 400).unwrap();
    assert!((a.value - b.value).norm() <= a.abs_error_estimate.max(b.abs_error_estimate) + 1e-15);
    let params = BilateralParams::new(&[c64(0.1, 0.0), c64(0.0, 0.2)], &[c64(1.3, 0.0), c64(1.4, -0.2)], c64(1.0, 0.0)).unwrap();
    let a = bilateral_h_star_with_cutoff(&params, 100).unwrap();
    let b = bilateral_h_star_with_cutoff(&params, 200).unwrap();
    assert!((a.value - b.value).norm() <= a.abs_error_estimate.max(b.abs_error_estimate) + 1e-15);
}

#[test]
fn shifted_solution_examples() {
    let (a1, a2, b1, b2) = (c64(0.15, 0.1), c64(0.25, 0.0), c64(1.2, 0.0), c64(1.35, 0.0));
    let z = unit(2.0);
    let j0 = shifted_solution_jt(a1, a2, b1, b2, c64(0.0, 0.0), z).unwrap();
    let params = BilateralParams::new(&[a1, a2], &[b1, b2], z).unwrap();
    assert_eq!(j0.value, bilateral_h_star(&params).unwrap().value);
    let t = c64(0.3, 0.2);
    let at_minus_one = shifted_solution_jt(a1, a2, b1, b2, t, c64(-1.0, 0.0)).unwrap();
    let params = BilateralParams::new(&[a1 + t, a2 + t], &[b1 + t, b2 + t], c64(-1.0, 0.0)).unwrap();
    assert!(rel(at_minus_one.value, bilateral_h_star(&params).unwrap().value) < 1e-15);
    let r = three_term_residual(a1, a2, b1, b2, [c64(0.0, 0.0), 1.0 - b1, 1.0 - b2], z).unwrap();
    assert!(r < 1e-9, "three-term residual {r}");
    assert!(matches!(shifted_solution_jt(a1, a2, b1, b2, t, c64(1.0, 0.0)), Err(Error::Branch(_))));
}

#[test]
fn three_term_dependence_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let a1 = c64(rng.gen_range(-0.3..0.4), rng.gen_range(-0.3..0.3));
        let a2 = c64(rng.gen_range(-0.3..0.4), rng.gen_range(-0.3..0.3));
        let b1 = c64(rng.gen_range(1.1..1.6), rng.gen_range(-0.3..0.3));
        let b2 = c64(rng.gen_range(1.1..1.6), rng.gen_range(-0.3..0.3));
        let phi = rng.gen_range(0.3..(2.0 * std::f64::consts::PI - 0.3));
        let r = three_term_residual(a1, a2, b1, b2, [c64(0.0, 0.0), 1.0 - b1, 1.0 - b2], unit(phi)).unwrap();
        assert!(r < 1e-9, "residual {r}");
    }
}

#[test]
fn contiguous_relation_examples() {
    let r = contiguous_step_2f1(c64(0.6, 0.0), c64(1.9, 0.0), c64(2.3, 0.0), c64(0.3, 0.0)).unwrap();
    assert!(r < 1e-11);
    let r = contiguous_step_2f1(c64(0.5, 0.4), c64(1.1, 0.0), c64(1.7, -0.2), c64(-0.45, 0.0)).unwrap();
    assert!(r < 1e-11);
    assert_eq!(contiguous_step_2f1(c64(0.6, 0.0), c64(1.9, 0.0), c64(2.3, 0.0), c64(0.0, 0.0)).unwrap(), 0.0);
    assert!(matches!(
        contiguous_step_2f1(c64(0.6, 0.0), c64(1.6, 0.0), c64(2.3, 0.0), c64(0.3, 0.0)),
        Err(Error::Degenerate(_))
    ));
}

proptest! {
    #[test]
    fn dougall_conjugate_symmetry(a1r in -0.5f64..0.5, a1i in -1.0f64..1.0, a2r in -0.5f64..0.5, a2i in -1.0f64..1.0,
                                  b1r in 1.0f64..2.0, b1i in -1.0f64..1.0, b2r in 1.0f64..2.0, b2i in -1.0f64..1.0) {
        let (a1, a2, b1, b2) = (c64(a1r, a1i), c64(a2r, a2i), c64(b1r, b1i), c64(b2r, b2i));
        let v = dougall_closed_form(a1, a2, b1, b2).unwrap();
        let w = dougall_closed_form(a1.conj(), a2.conj(), b1.conj(), b2.conj()).unwrap();
        prop_assert!(rel(v.conj(), w) < 1e-12);
    }

    #[test]
    fn bilateral_conjugate_symmetry(a1r in -0.3f64..0.3, a1i in -0.5f64..0.5, b1r in 1.0f64..1.5, b1i in -0.5f64..0.5, phi in 0.3f64..6.0) {
        let upper = [c64(a1r, a1i), c64(0.2, 0.1)];
        let lower = [c64(b1r, b1i), c64(1.2, -0.1)];
        let p = BilateralParams::new(&upper, &lower, unit(phi)).unwrap();
        let q = BilateralParams::new(&[upper[0].conj(), upper[1].conj()], &[lower[0].conj(), lower[1].conj()], unit(phi).conj()).unwrap();
        let v = bilateral_h_star(&p).unwrap().value;
        let w = bilateral_h_star(&q).unwrap().value;
        prop_assert!((v.conj() - w).norm() < 1e-12 * (1.0 + v.norm()));
    }

    #[test]
    fn gauss_conjugate_symmetry(ar in -1.0f64..1.5, ai in -1.0f64..1.0, br in -1.0f64..1.5, cr in 0.6f64..2.5, ci in -1.0f64..1.0,
                                zr in -0.95f64..0.95, zi in -0.95f64..0.95) {
        let z = c64(zr, zi);
        prop_assume!(z.norm() < 0.99);
        let (a, b, c) = (c64(ar, ai), c64(br, 0.3), c64(cr, ci));
        let v = gauss_2f1(a, b, c, z).unwrap().value;
        let w = gauss_2f1(a.conj(), b.conj(), c.conj(), z.conj()).unwrap().value;
        prop_assert!((v.conj() - w).norm() < 1e-11 * (1.0 + v.norm()));
    }
}
