use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("site index {0} out of range (expected 1, 2 or 3)")]
    SiteOutOfRange(usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("support of rho is not contained in support of sigma (weight {weight:.3e} on null space)")]
    SupportViolation { weight: f64 },

    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigenvalue {value} of rho*rho_tilde is not a non-negative real number")]
    BadSpectrum { value: String },

    #[error("eigensolver did not converge")]
    EigenFailure,

    #[error("negative logarithm argument {0:.3e} in closed-form discord")]
    NegativeLogArgument(f64),

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
