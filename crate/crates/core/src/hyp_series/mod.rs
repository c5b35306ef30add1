//! Gauss ₂F₁ with its connection formulas, the regularized bilateral sums
//! ₚHₚ* on the unit circle, and the identities tying them together.

mod bilateral;
mod f21;
mod relations;
mod tails;

pub use bilateral::{bilateral_h_star, bilateral_h_star_with_cutoff, BilateralParams};
pub use f21::{gauss_2f1, gauss_2f1_arg, HypArg};
pub use relations::{contiguous_step_2f1, dougall_closed_form, shifted_solution_jt, three_term_residual};
pub use tails::hurwitz_zeta;

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesStatus {
    /// Absolutely convergent, truncation bound below tolerance.
    Converged,
    /// Stopped on the term cap before the bound was met.
    Truncated,
    /// Conditionally convergent bilateral sum, value is the symmetric limit.
    Regularized,
}

impl SeriesStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesStatus::Converged => "converged",
            SeriesStatus::Truncated => "truncated",
            SeriesStatus::Regularized => "regularized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: C64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub status: SeriesStatus,
}

impl SeriesValue {
    pub(crate) fn new(value: C64, abs_error_estimate: f64, terms_used: usize, status: SeriesStatus) -> Self {
        Self { value, abs_error_estimate: abs_error_estimate.max(0.0), terms_used, status }
    }

    pub(crate) fn scaled(self, factor: C64) -> Self {
        Self { value: self.value * factor, abs_error_estimate: self.abs_error_estimate * factor.norm(), ..self }
    }

    /// Combination `Σ cᵢ·vᵢ`, the weakest status wins.
    pub(crate) fn combine(parts: &[(C64, SeriesValue)]) -> Self {
        let mut value = C64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut terms = 0;
        let mut status = SeriesStatus::Converged;
        for (c, v) in parts {
            value += c * v.value;
            err += c.norm() * v.abs_error_estimate;
            terms += v.terms_used;
            status = weaker(status, v.status);
        }
        Self::new(value, err, terms, status)
    }
}

fn weaker(a: SeriesStatus, b: SeriesStatus) -> SeriesStatus {
    use SeriesStatus::*;
    match (a, b) {
        (Truncated, _) | (_, Truncated) => Truncated,
        (Regularized, _) | (_, Regularized) => Regularized,
        _ => Converged,
    }
}
