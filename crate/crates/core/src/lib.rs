//! Numerics for the ℂ²-valued hypergeometric index transform: special
//! functions, bilateral series, eigenfunctions of the operator 𝒟, the
//! forward and inverse transforms, and verification suites.

pub mod eigen;
pub mod error;
pub mod hyp_series;
pub mod special_core;

pub mod ode;
pub mod par;
pub mod quad;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;

/// `C64` constructor shorthand.
#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
