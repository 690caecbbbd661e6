use thiserror::Error;

/// Errors raised by the exact-arithmetic substrate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    BadDegree,

    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("attempt to invert a non-unit")]
    NonUnit,

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element does not lie in the requested subfield")]
    NotInSubfield,

    #[error("denominator not invertible modulo {0}")]
    BadReduction(u64),

    #[error("series composition requires inner series with zero constant term")]
    BadComposition,

    #[error("no square root: {0}")]
    NoSquareRoot(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
