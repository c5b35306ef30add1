//! Eigenfunctions of
//! 𝒟 = d/dx (1/4+x²) d/dx + w²/(4(1/2+ix)) + w̄²/(4(1/2−ix)) + 1/4,  w = α+iβ,
//! with their connection data, Gram matrices and spectral densities.
//!
//! Every "2" object is the "1" object at (−α, −β).

mod coeffs;
mod gram;
mod mat2;
mod operator;
mod params;
mod phi;
mod psi;
mod romanovski;
mod theta;

pub use coeffs::{
    amplitude, asymptotic_coeffs, connection_coeffs, difference_coefficients, gamma_phase, phi_theta_weights,
    psi1_asymptotic_vector, scattering_g, scattering_matrix, theta_from_psi,
};
pub use gram::{
    gram_det_closed_form, gram_matrix_delta, phi_gram, phi_gram_scale, phi_inner_product, spectral_density_r,
    spectral_matrix_xi,
};
pub use mat2::Mat2;
pub use operator::{apply_d, default_step, eigen_residual, ode_oracle, ode_oracle_with, potential, EigenResidual};
pub use params::{require_continuous, require_generic_sigma, Params, SpectralPoint};
pub use phi::{phi, phi_bilateral_params, phi_direct, phi_fallback, phi_with_path, PhiPath};
pub use psi::{psi1, psi1_alternate, psi1_with_slope, psi2, psi2_with_slope, ValueAndSlope};
pub use romanovski::{
    romanovski_norm_sq, romanovski_norm_sq_as_printed, romanovski_sigma, romanovski_theta, romanovski_via_phi,
};
pub use theta::{jost_on_nodes, jost_pair_on_nodes, jost_series, phi_jost_weights, theta_basis};
