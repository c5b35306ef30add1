//! Complex Γ, Pochhammer symbols, pole-safe Γ-ratios and the principal-branch
//! powers of `1/2 ± ix`.

mod gamma;
mod power;
mod trig;

pub use gamma::{complex_gamma, gamma_ratio, is_nonpositive_integer, ln_gamma, pochhammer, reciprocal_gamma, GammaRatio};
pub use power::{half_base, half_power, half_power_pair, Sign};
pub use trig::{cos_pi, cosh_pi, ln_sin_pi, sin_pi};
