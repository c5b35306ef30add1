//! The index transform J f(σ,t) = ∫ f conj Φ(σ,t;·), its inversion and
//! Plancherel pairing over σ = iν, the discrete Romanovski terms for α > 1/2,
//! the difference operator 𝒵, and closed-form transforms of power functions.

mod closed_forms;
mod difference;
mod forward;
mod spectrum;
mod test_function;

pub use closed_forms::{
    beta_integral, closed_form_p_reduction, closed_form_q_reduction, closed_form_transform_power, power_function,
    power_transform_quadrature, TruncatedTransform,
};
pub use difference::{difference_operator_z, z_coefficients};
pub use forward::{discrete_projection, forward_options, forward_transform, forward_transform_with, romanovski_pairing};
pub use spectrum::{
    discrete_coefficients, inverse_transform, panel_width_for, plancherel_pairing, sample_transform, sample_transform_on,
    DiscreteTerm, NuGrid, SpectralMaps, SpectralNode, SpectrumOptions, TransformSample, PANEL_ORDER,
};
pub use test_function::{Piece, TestFunction, PRESET_NAMES};
