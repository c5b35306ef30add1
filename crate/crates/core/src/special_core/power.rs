use crate::C64;

/// Which of the two conjugate bases `1/2 ± ix` a power is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The base `1/2 ± ix`. Its real part is 1/2, so the principal logarithm is
/// continuous along the real line.
pub fn half_base(x: f64, sign: Sign) -> C64 {
    match sign {
        Sign::Plus => C64::new(0.5, x),
        Sign::Minus => C64::new(0.5, -x),
    }
}

/// `(1/2 ± ix)^τ` on the principal branch, equal to `2^{−τ}` at `x = 0`.
pub fn half_power(x: f64, tau: C64, sign: Sign) -> C64 {
    if tau == C64::new(0.0, 0.0) {
        return C64::new(1.0, 0.0);
    }
    (tau * half_base(x, sign).ln()).exp()
}

/// `(1/2+ix)^p (1/2−ix)^q` combined in one exponential, so neither factor
/// can overflow on its own.
pub fn half_power_pair(x: f64, p: C64, q: C64) -> C64 {
    (p * half_base(x, Sign::Plus).ln() + q * half_base(x, Sign::Minus).ln()).exp()
}
