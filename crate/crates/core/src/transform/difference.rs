use crate::eigen::Params;
use crate::error::{Error, Result};
use crate::C64;

/// Coefficients of 𝒵 in terms of σ̄: the conjugates of the kernel-level
/// coefficients at σ, so that J(ix·f) = 𝒵 Jf.
pub fn z_coefficients(params: &Params, sigma: C64) -> Result<[C64; 3]> {
    let sb = sigma.conj();
    for v in [2.0 * sb, 2.0 * sb - 1.0, 2.0 * sb + 1.0] {
        if v.norm() < 1e-12 {
            return Err(Error::Pole(format!("2σ̄ = {} makes a 𝒵 coefficient singular", 2.0 * sb)));
        }
    }
    let (a, b) = (params.alpha(), params.beta());
    let lower = (0.5 + a - sb) * (0.5 - a - sb) * (C64::new(0.5, b) - sb) * (C64::new(0.5, -b) - sb)
        / ((-2.0 * sb) * (1.0 - 2.0 * sb));
    let middle = C64::new(0.0, 2.0 * a * b) / ((2.0 * sb - 1.0) * (2.0 * sb + 1.0));
    let upper = 1.0 / (2.0 * sb * (1.0 + 2.0 * sb));
    Ok([lower, middle, upper])
}

/// 𝒵F(σ, t) = c₋F(σ−1, t) + c₀F(σ, t) + c₊F(σ+1, t) with the σ̄ coefficients
/// of [`z_coefficients`].
pub fn difference_operator_z<F>(params: &Params, transform: F, sigma: C64, t: C64) -> Result<C64>
where
    F: Fn(C64, C64) -> Result<C64>,
{
    let [lower, middle, upper] = z_coefficients(params, sigma)?;
    let mut total = middle * transform(sigma, t)?;
    total += lower * transform(sigma - 1.0, t)?;
    total += upper * transform(sigma + 1.0, t)?;
    Ok(total)
}
