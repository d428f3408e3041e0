use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is structurally invalid (non-finite, zero where positive
    /// is required, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncation order larger than the stored table was requested.
    #[error("insufficient coefficients: requested {requested}, table holds {available}")]
    InsufficientCoefficients { requested: usize, available: usize },

    /// The requested computation exceeds the configured resource budget.
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    /// An orbit left the overflow guard; the input was outside the
    /// convergence domain of the operation.
    #[error("orbit escaped: {0}")]
    Escaped(String),

    /// A coefficient cache file is malformed or does not match the request.
    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
