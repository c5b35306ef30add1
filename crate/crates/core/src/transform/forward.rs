use super::TestFunction;
use crate::eigen::{phi_with_path, romanovski_norm_sq, romanovski_theta, Params, PhiPath, SpectralPoint};
use crate::error::Result;
use crate::quad::{integrate_pieces_fallible, QuadOptions, QuadResult};
use crate::C64;

/// Absolute tolerance 1e-11, relaxed to 1e-10 relative once |J f| ≫ 1:
/// |Φ(iν)| grows like e^{3πν/2}, and an absolute target below ε·|Φ| is
/// unreachable.
pub fn forward_options() -> QuadOptions {
    QuadOptions { abs_tol: 1e-11, rel_tol: 1e-10, ..QuadOptions::default() }
}

/// J f(σ, t) = ∫ f(x) conj Φ(σ, t; x) dx.
pub fn forward_transform(params: &Params, f: &TestFunction, pt: &SpectralPoint) -> Result<C64> {
    Ok(forward_transform_with(params, f, pt, PhiPath::Auto, forward_options())?.value)
}

/// Adaptive Gauss–Kronrod over supp f, split at the kinks of f.
pub fn forward_transform_with(
    params: &Params,
    f: &TestFunction,
    pt: &SpectralPoint,
    path: PhiPath,
    opts: QuadOptions,
) -> Result<QuadResult> {
    integrate_pieces_fallible(
        |x| {
            let v = f.eval(x);
            if v == C64::new(0.0, 0.0) {
                return Ok(v);
            }
            Ok(v * phi_with_path(params, pt, x, path)?.conj())
        },
        &f.breakpoints(),
        opts,
    )
}

/// ⟨f, Θᵏ⟩ = ∫ f conj Θᵏ dx.
pub fn romanovski_pairing(params: &Params, f: &TestFunction, k: usize) -> Result<C64> {
    let opts = QuadOptions::default();
    Ok(integrate_pieces_fallible(|x| Ok(f.eval(x) * romanovski_theta(params, k, x)?.conj()), &f.breakpoints(), opts)?.value)
}

/// Coefficient ⟨f, Θᵏ⟩/‖Θᵏ‖² of the discrete eigenfunction Θᵏ in f.
pub fn discrete_projection(params: &Params, f: &TestFunction, k: usize) -> Result<C64> {
    let norm = romanovski_norm_sq(params, k)?;
    Ok(romanovski_pairing(params, f, k)? / norm)
}
