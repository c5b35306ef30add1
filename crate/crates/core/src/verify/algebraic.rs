use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check, rel_dev, Check, Measurement};
use crate::error::Result;
use crate::hyp_series::{
    bilateral_h_star, contiguous_step_2f1, dougall_closed_form, gauss_2f1, three_term_residual, BilateralParams, SeriesStatus,
};
use crate::special_core::{complex_gamma, ln_gamma, pochhammer, reciprocal_gamma, sin_pi};
use crate::{c64, C64};

/// A point of the complex plane at least 0.1 from every pole of Γ, with
/// |z| ≤ 12 so that products of two Γ values stay finite.
fn gamma_point(rng: &mut ChaCha8Rng) -> C64 {
    loop {
        let z = c64(rng.gen_range(-8.0..12.0), rng.gen_range(-6.0..6.0));
        let near_pole = z.re < 0.5 && z.im.abs() < 0.1 && (z.re - z.re.round()).abs() < 0.1;
        if !near_pole && z.norm() <= 12.0 {
            return z;
        }
    }
}

fn worst<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<(f64, usize)> {
    let mut max = 0.0f64;
    let mut n = 0;
    for r in it {
        // NaN must not be masked by max
        let r = r?;
        max = if r.is_nan() { f64::NAN } else { max.max(r) };
        n += 1;
    }
    Ok((max, n))
}

fn over_draws<F>(rng: &mut ChaCha8Rng, n: usize, mut f: F) -> Result<Measurement>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64>,
{
    let (max, count) = worst((0..n).map(|_| f(rng)))?;
    Ok(Measurement::new(max, count))
}

pub(super) fn gamma_checks() -> Vec<Check> {
    vec![
        check("reflection", 1e-11, |_, rng| {
            // Γ(z)Γ(1−z) sin πz = π
            over_draws(rng, 200, |rng| {
                let z = gamma_point(rng);
                let lhs = complex_gamma(z)? * complex_gamma(1.0 - z)? * sin_pi(z);
                Ok(rel_dev(lhs, c64(PI, 0.0), 1.0))
            })
        }),
        check("recurrence", 1e-12, |_, rng| {
            over_draws(rng, 200, |rng| {
                let z = gamma_point(rng);
                Ok(rel_dev(complex_gamma(z + 1.0)?, z * complex_gamma(z)?, 1e-300))
            })
        }),
        check("conjugate_symmetry", 1e-13, |_, rng| {
            over_draws(rng, 200, |rng| {
                let z = gamma_point(rng);
                Ok(rel_dev(complex_gamma(z.conj())?, complex_gamma(z)?.conj(), 1e-300))
            })
        }),
        check("reciprocal", 1e-12, |_, rng| {
            over_draws(rng, 200, |rng| {
                let z = gamma_point(rng);
                Ok((reciprocal_gamma(z) * complex_gamma(z)? - 1.0).norm())
            })
        }),
        check("duplication", 1e-11, |_, rng| {
            // ln Γ(z) + ln Γ(z+½) = (1−2z) ln 2 + ½ ln π + ln Γ(2z), mod 2πi
            over_draws(rng, 200, |rng| {
                let z = c64(rng.gen_range(0.1..5.0), rng.gen_range(-5.0..5.0));
                let lhs = ln_gamma(z) + ln_gamma(z + 0.5);
                let rhs = (1.0 - 2.0 * z) * 2f64.ln() + 0.5 * PI.ln() + ln_gamma(2.0 * z);
                Ok(rel_dev(lhs.exp(), rhs.exp(), 1e-300))
            })
        }),
        check("pochhammer_two_sided", 1e-12, |_, rng| {
            // (a)ₙ (a+n)₋ₙ = 1
            over_draws(rng, 200, |rng| {
                let a = c64(rng.gen_range(-6.0..6.0), rng.gen_range(0.01..3.0));
                let n = rng.gen_range(-10i64..=10);
                Ok((pochhammer(a, n)? * pochhammer(a + n as f64, -n)? - 1.0).norm())
            })
        }),
    ]
}

/// (a₁, a₂, b₁, b₂) with κ = Re(a₁+a₂−b₁−b₂) < −1.2.
fn dougall_draw(rng: &mut ChaCha8Rng) -> [C64; 4] {
    loop {
        let mut a = || c64(rng.gen_range(-0.4..0.4), rng.gen_range(-0.5..0.5));
        let (a1, a2) = (a(), a());
        let b1 = c64(rng.gen_range(1.0..2.0), rng.gen_range(-0.5..0.5));
        let b2 = c64(rng.gen_range(1.0..2.0), rng.gen_range(-0.5..0.5));
        if (a1 + a2 - b1 - b2).re < -1.2 {
            return [a1, a2, b1, b2];
        }
    }
}

pub(super) fn series_checks() -> Vec<Check> {
    vec![
        check("dougall", 1e-10, |_, rng| {
            let mut truncated = 0;
            let m = over_draws(rng, 100, |rng| {
                let [a1, a2, b1, b2] = dougall_draw(rng);
                let h = bilateral_h_star(&BilateralParams::new(&[a1, a2], &[b1, b2], c64(1.0, 0.0))?)?;
                if h.status != SeriesStatus::Converged {
                    truncated += 1;
                }
                Ok(rel_dev(h.value, dougall_closed_form(a1, a2, b1, b2)?, 1e-300))
            })?;
            Ok(m.with_note(format!("{truncated} draws not marked converged")))
        }),
        check("dougall_example", 1e-10, |_, _| {
            let (a1, a2, b1, b2) = (c64(0.1, 0.0), c64(0.0, 0.2), c64(1.3, 0.0), c64(1.4, -0.2));
            let h = bilateral_h_star(&BilateralParams::new(&[a1, a2], &[b1, b2], c64(1.0, 0.0))?)?;
            Ok(Measurement::new(rel_dev(h.value, dougall_closed_form(a1, a2, b1, b2)?, 1e-300), 1)
                .with_note(h.status.as_str()))
        }),
        check("three_term", 1e-9, |_, rng| {
            over_draws(rng, 50, |rng| {
                let mut a = || c64(rng.gen_range(-0.3..0.4), rng.gen_range(-0.3..0.3));
                let (a1, a2) = (a(), a());
                let mut b = || c64(rng.gen_range(1.1..1.6), rng.gen_range(-0.3..0.3));
                let (b1, b2) = (b(), b());
                let phi: f64 = rng.gen_range(0.3..(2.0 * PI - 0.3));
                let z = c64(phi.cos(), phi.sin());
                three_term_residual(a1, a2, b1, b2, [c64(0.0, 0.0), 1.0 - b1, 1.0 - b2], z)
            })
        }),
        check("contiguous", 1e-10, |_, rng| {
            over_draws(rng, 40, |rng| {
                let p = c64(rng.gen_range(0.1..1.0), rng.gen_range(-0.5..0.5));
                let q = p + c64(rng.gen_range(0.4..1.6), rng.gen_range(-0.5..0.5));
                let r = c64(rng.gen_range(2.0..3.0), rng.gen_range(-0.5..0.5));
                let y = c64(rng.gen_range(-0.6..0.6), rng.gen_range(-0.3..0.3));
                let scale = gauss_2f1(p, q, r, y)?.value.norm().max(1.0);
                Ok(contiguous_step_2f1(p, q, r, y)? / scale)
            })
        }),
        check("pfaff", 1e-11, |_, rng| {
            // F(a,b;c;z) = (1−z)^{−a} F(a, c−b; c; z/(z−1))
            over_draws(rng, 40, |rng| {
                let a = c64(rng.gen_range(-1.0..1.5), rng.gen_range(-1.0..1.0));
                let b = c64(rng.gen_range(-1.0..1.5), rng.gen_range(-1.0..1.0));
                let c = c64(rng.gen_range(0.6..2.5), rng.gen_range(-1.0..1.0));
                let z = c64(rng.gen_range(-0.45..0.45), rng.gen_range(-0.45..0.45));
                let lhs = gauss_2f1(a, b, c, z)?.value;
                let rhs = (1.0 - z).powc(-a) * gauss_2f1(a, c - b, c, z / (z - 1.0))?.value;
                Ok(rel_dev(rhs, lhs, 1e-300))
            })
        }),
    ]
}
