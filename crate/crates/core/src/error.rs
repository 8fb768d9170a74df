use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index:?} out of range for dims {dims:?}")]
    IndexOutOfRange { index: Vec<usize>, dims: Vec<usize> },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: String, found: String },

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("search space of {size} candidates exceeds the guard of {guard}")]
    SearchSpaceTooLarge { size: String, guard: u128 },

    #[error("linear map is not invertible")]
    NotInvertible,

    #[error("{0} is not defined for this structure")]
    UnsupportedVariant(String),

    #[error("malformed scalar {0:?}")]
    ScalarSyntax(String),

    #[error("engines disagree: {0}")]
    EngineDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch(expected: impl ToString, found: impl ToString) -> Error {
    Error::DimMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
