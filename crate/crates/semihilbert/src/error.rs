use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("matrix has a non-finite entry")]
    NonFinite,

    #[error("weight matrix is not positive semidefinite (eigenvalue {eigenvalue:.6e})")]
    NotPsd { eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator does not map the null space of the weight into itself (not A-bounded)")]
    NotABounded,

    #[error("invalid seminorm parameters: {0}")]
    InvalidParams(String),

    #[error("weight matrix is zero; the requested quantity needs rank >= 1")]
    ZeroWeight,

    #[error("unsupported ensemble `{0}`")]
    UnsupportedEnsemble(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
