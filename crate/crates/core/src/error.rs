use thiserror::Error;

/// Every failure mode of the library. Variant names are stable: the CLI
/// prints them as diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("PoleError: {0}")]
    Pole(String),
    #[error("RangeError: {0}")]
    Range(String),
    #[error("ParameterPole: {0}")]
    ParameterPole(String),
    #[error("LogarithmicCase: {0}")]
    LogarithmicCase(String),
    #[error("DivergenceError: {0}")]
    Divergence(String),
    #[error("BranchError: {0}")]
    Branch(String),
    #[error("DegenerateError: {0}")]
    Degenerate(String),
    #[error("StepFailure: {0}")]
    StepFailure(String),
    #[error("QuadratureFailure: {0}")]
    QuadratureFailure(String),
    #[error("ResolutionError: {0}")]
    Resolution(String),
    #[error("NonFinite: {0}")]
    NonFinite(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Range(_) => "RangeError",
            Error::ParameterPole(_) => "ParameterPole",
            Error::LogarithmicCase(_) => "LogarithmicCase",
            Error::Divergence(_) => "DivergenceError",
            Error::Branch(_) => "BranchError",
            Error::Degenerate(_) => "DegenerateError",
            Error::StepFailure(_) => "StepFailure",
            Error::QuadratureFailure(_) => "QuadratureFailure",
            Error::Resolution(_) => "ResolutionError",
            Error::NonFinite(_) => "NonFinite",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(z: num_complex::Complex64, what: &str) -> Result<num_complex::Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(format!("{what} evaluated to {z}")))
    }
}
