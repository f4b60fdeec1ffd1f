use thiserror::Error;

/// Errors raised by the operator constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not Hermitian (deviation {deviation:.3e}, allowed {allowed:.3e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e} <= {threshold:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64, threshold: f64 },

    #[error("singular or ill-conditioned system: {0}")]
    Singular(String),

    #[error("point outside the admissible domain: {0}")]
    Domain(String),

    #[error("zeros {0} and {1} are clustered; use the coefficient-space model for repeated zeros")]
    ClusteredZeros(usize, usize),

    #[error("truncation too short: {0}")]
    InsufficientTruncation(String),

    #[error("norm-profile metadata violated: {0}")]
    MetadataViolation(String),

    #[error("incompatible direct sum: {0}")]
    IncompatibleSum(String),

    #[error("symbol has coanalytic coefficients; an analytic symbol is required")]
    NotAnalytic,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("numerical inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
