use super::tails::{binomials, exp_series, hurwitz_zeta, log_ratio_coefficients, polylog_negative_orders, MAX_ORDER};
use super::{SeriesStatus, SeriesValue};
use crate::error::{Error, Result};
use crate::special_core::{ln_gamma, reciprocal_gamma};
use crate::C64;

const EPS: f64 = f64::EPSILON;
const MIN_CUTOFF: usize = 64;
const MAX_CUTOFF: usize = 20_000;

/// Parameters of ₚHₚ*[a₁…a_p; b₁…b_p; z] with |z| = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BilateralParams {
    upper: Vec<C64>,
    lower: Vec<C64>,
    z: C64,
}

impl BilateralParams {
    pub fn new(upper: &[C64], lower: &[C64], z: C64) -> Result<Self> {
        if upper.len() != lower.len() || !(2..=3).contains(&upper.len()) {
            return Err(Error::InvalidInput(format!(
                "bilateral series needs p ∈ {{2,3}} upper and lower parameters, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        if upper.iter().chain(lower.iter()).chain(std::iter::once(&z)).any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite("bilateral series parameter".into()));
        }
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("|z| = {} is not 1", z.norm())));
        }
        Ok(Self { upper: upper.to_vec(), lower: lower.to_vec(), z })
    }

    pub fn upper(&self) -> &[C64] {
        &self.upper
    }

    pub fn lower(&self) -> &[C64] {
        &self.lower
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    /// κ = Re(Σaⱼ − Σbⱼ); absolute convergence iff κ < −1.
    pub fn kappa(&self) -> f64 {
        self.exponent().re
    }

    fn exponent(&self) -> C64 {
        self.upper.iter().sum::<C64>() - self.lower.iter().sum::<C64>()
    }

    /// Parameters whose n ≥ 1 terms are the n ≤ −1 terms of `self`.
    fn reflected(&self) -> Self {
        Self {
            upper: self.lower.iter().map(|b| 1.0 - b).collect(),
            lower: self.upper.iter().map(|a| 1.0 - a).collect(),
            z: 1.0 / self.z,
        }
    }

    fn sign(&self) -> f64 {
        if self.upper.len().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// T_n = ((−1)^p z)^n Π 1/Γ(1−aⱼ−n) Π 1/Γ(bⱼ+n), evaluated from scratch.
    fn term(&self, n: i64) -> C64 {
        let nf = n as f64;
        let args: Vec<C64> = self.upper.iter().map(|a| 1.0 - a - nf).chain(self.lower.iter().map(|b| b + nf)).collect();
        let phase = (C64::new(0.0, nf) * (self.sign() * self.z).arg()).exp();
        if args.iter().all(|v| v.norm() < 50.0) {
            return phase * args.iter().map(|v| reciprocal_gamma(*v)).product::<C64>();
        }
        if args.iter().any(|v| reciprocal_gamma_vanishes(*v)) {
            return C64::new(0.0, 0.0);
        }
        phase * (-args.iter().map(|v| ln_gamma(*v)).sum::<C64>()).exp()
    }

    fn default_cutoff(&self) -> usize {
        let scale = self.upper.iter().chain(self.lower.iter()).map(|v| v.norm()).fold(0.0, f64::max);
        let mut n = (4.0 * scale + 40.0).max(MIN_CUTOFF as f64);
        let gap = (1.0 - self.z).norm();
        if gap > 1e-300 {
            n = n.max(60.0 / gap);
        }
        n.min(MAX_CUTOFF as f64).ceil() as usize
    }
}

fn reciprocal_gamma_vanishes(v: C64) -> bool {
    v.im == 0.0 && v.re <= 0.0 && v.re == v.re.round()
}

/// Last index with a possibly nonzero term, when an integer upper parameter
/// cuts the n → +∞ side off.
fn last_nonzero(params: &BilateralParams) -> Option<i64> {
    params
        .upper
        .iter()
        .filter(|a| a.im == 0.0 && a.re == a.re.round() && a.re.abs() < 1e15)
        .map(|a| -a.re as i64)
        .min()
}

struct SideSum {
    value: C64,
    err: f64,
    terms: usize,
    infinite: bool,
}

/// Σ_{n ≥ start} T_n, direct up to `cutoff`, closed-form tail beyond.
fn one_side(params: &BilateralParams, start: i64, cutoff: usize) -> SideSum {
    if let Some(last) = last_nonzero(params) {
        let mut value = C64::new(0.0, 0.0);
        let mut abs = 0.0;
        for n in start..=last {
            let t = params.term(n);
            value += t;
            abs += t.norm();
        }
        return SideSum { value, err: 4.0 * EPS * abs, terms: (last - start + 1).max(0) as usize, infinite: false };
    }
    let cutoff = (cutoff as i64).max(start);
    let z = params.z;
    let mut value = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    let mut t = params.term(start);
    for n in start..=cutoff {
        value += t;
        abs += t.norm();
        if n == cutoff {
            break;
        }
        let nf = n as f64;
        let num: C64 = params.upper.iter().map(|a| a + nf).product();
        let den: C64 = params.lower.iter().map(|b| b + nf).product();
        t = if t == C64::new(0.0, 0.0) || den == C64::new(0.0, 0.0) { params.term(n + 1) } else { t * z * num / den };
    }
    let (tail, tail_err) = tail_sum(params, cutoff as f64, t);
    SideSum {
        value: value + tail,
        err: 8.0 * EPS * (abs + tail.norm()) + tail_err,
        terms: (cutoff - start + 1) as usize,
        infinite: true,
    }
}

/// Σ_{n > N} T_n from T_N and the large-n expansion
/// T_n = C zⁿ n^s Σ_j e_j n^{−j}.
fn tail_sum(params: &BilateralParams, big_n: f64, t_n: C64) -> (C64, f64) {
    let s = params.exponent();
    let d = log_ratio_coefficients(&params.upper, &params.lower, MAX_ORDER);
    let e = exp_series(&d);
    let inv = 1.0 / big_n;
    let mut norm_at_n = C64::new(0.0, 0.0);
    let mut p = 1.0;
    for ej in &e {
        norm_at_n += ej * p;
        p *= inv;
    }
    let scale = t_n / norm_at_n;
    let mut total = C64::new(0.0, 0.0);
    let mut last = 0.0f64;
    if (params.z - 1.0).norm() < 1e-15 {
        // Σ_{n>N} n^{s−j} = ζ(j−s, N+1), relative to N^s.
        let base = (-s * big_n.ln()).exp();
        for (j, ej) in e.iter().enumerate() {
            let contrib = ej * base * hurwitz_zeta(j as f64 - s, big_n + 1.0);
            total += contrib;
            last = contrib.norm();
        }
    } else {
        let li = polylog_negative_orders(params.z, MAX_ORDER);
        let mut pj = 1.0;
        for (j, ej) in e.iter().enumerate() {
            let binom = binomials(s - j as f64, MAX_ORDER - j);
            let mut pk = pj;
            for (k, bk) in binom.iter().enumerate() {
                let contrib = ej * bk * pk * li[k];
                total += contrib;
                if j + k == MAX_ORDER {
                    last = last.max(contrib.norm());
                }
                pk *= inv;
            }
            pj *= inv;
        }
    }
    let tail = scale * total;
    (tail, scale.norm() * last + EPS * tail.norm())
}

/// ₚHₚ*[a; b; z] for p ∈ {2, 3}, |z| = 1: the symmetric limit of
/// Σ_{n=−N}^{N} ((−1)^p z)ⁿ / Γ[1−a−n, b+n].
pub fn bilateral_h_star(params: &BilateralParams) -> Result<SeriesValue> {
    let n0 = params.default_cutoff();
    bilateral_h_star_with_cutoff(params, n0)
}

/// As [`bilateral_h_star`] with an explicit direct-summation cutoff.
pub fn bilateral_h_star_with_cutoff(params: &BilateralParams, cutoff: usize) -> Result<SeriesValue> {
    let kappa = params.kappa();
    let reflected = params.reflected();
    let infinite_side = last_nonzero(params).is_none() || last_nonzero(&reflected).is_none();
    let at_one = (params.z - 1.0).norm() < 1e-12;
    let status = if !infinite_side || kappa < -1.0 {
        SeriesStatus::Converged
    } else if at_one {
        return Err(Error::Divergence(format!("κ = {kappa} ≥ −1 at z = 1")));
    } else if kappa < 0.0 {
        SeriesStatus::Regularized
    } else {
        return Err(Error::Divergence(format!("κ = {kappa} ≥ 0: the sum exists only as a distribution")));
    };
    let params_z1;
    let (pos_params, neg_params) = if at_one {
        // Snap z to 1 so the Hurwitz tail applies on both sides.
        params_z1 = BilateralParams { z: C64::new(1.0, 0.0), ..params.clone() };
        let r = params_z1.reflected();
        (params_z1, r)
    } else {
        (params.clone(), reflected)
    };
    let pos = one_side(&pos_params, 0, cutoff);
    let neg = one_side(&neg_params, 1, cutoff);
    let value = pos.value + neg.value;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite(format!("bilateral sum evaluated to {value}")));
    }
    let status = if cutoff >= MAX_CUTOFF && (pos.infinite || neg.infinite) && status == SeriesStatus::Converged {
        SeriesStatus::Truncated
    } else {
        status
    };
    Ok(SeriesValue::new(value, pos.err + neg.err, pos.terms + neg.terms, status))
}
