use crate::error::{Error, Result};
use crate::C64;

/// The real pair (α, β) of the operator 𝒟, with w = α + iβ.
///
/// `new` enforces α ≥ 0. [`Params::mirrored`] produces (−α, −β), which is not
/// a valid operator parameter on its own but is how every "2" quantity is
/// obtained from its "1" counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    alpha: f64,
    beta: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidInput(format!("α = {alpha}, β = {beta} must be finite")));
        }
        if alpha < 0.0 {
            return Err(Error::InvalidInput(format!("α = {alpha} must be ≥ 0")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// w = α + iβ.
    pub fn w(&self) -> C64 {
        C64::new(self.alpha, self.beta)
    }

    /// (−α, −β).
    pub fn mirrored(&self) -> Self {
        Self { alpha: -self.alpha, beta: -self.beta }
    }

    /// (α, −β): the operator seen through x ↦ −x.
    pub fn reflected(&self) -> Self {
        Self { alpha: self.alpha, beta: -self.beta }
    }

    pub fn is_degenerate(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }

    /// Ψ, θ, Δ and Ξ need (α, β) ≠ (0, 0).
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::Degenerate("(α, β) = (0, 0) is excluded".into()))
        } else {
            Ok(())
        }
    }

    /// Purely continuous spectrum iff α ≤ 1/2.
    pub fn continuous_only(&self) -> bool {
        self.alpha.abs() <= 0.5
    }

    /// Number of discrete eigenvalues: the integers 0 ≤ k < α − 1/2.
    pub fn discrete_count(&self) -> usize {
        if self.alpha <= 0.5 {
            0
        } else {
            (self.alpha - 0.5).ceil() as usize
        }
    }
}

/// A spectral parameter σ together with the basis label t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub sigma: C64,
    pub t: C64,
}

impl SpectralPoint {
    pub fn new(sigma: C64, t: C64) -> Self {
        Self { sigma, t }
    }

    /// σ = iν on the continuous spectrum.
    pub fn continuous(nu: f64, t: C64) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::InvalidInput(format!("ν = {nu} must be positive")));
        }
        Ok(Self { sigma: C64::new(0.0, nu), t })
    }
}

/// Rejects σ with 2σ within 1e-6 of an integer, where Γ[±2σ] has poles.
pub fn require_generic_sigma(sigma: C64) -> Result<()> {
    let two = 2.0 * sigma;
    if two.im.abs() < 1e-6 && (two.re - two.re.round()).abs() < 1e-6 {
        return Err(Error::Pole(format!("2σ = {two} is too close to an integer")));
    }
    Ok(())
}

/// σ = iν with ν > 0, required by the Gram and density formulas.
pub fn require_continuous(sigma: C64) -> Result<f64> {
    if sigma.re.abs() > 1e-14 || sigma.im <= 0.0 {
        return Err(Error::InvalidInput(format!("σ = {sigma} is not of the form iν with ν > 0")));
    }
    Ok(sigma.im)
}
