use thiserror::Error;

/// Errors raised by the library. Every variant describes bad input; no
/// operation fails for internal reasons on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient list is empty")]
    EmptyCoefficients,

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term {0} is not a unit in the integers")]
    NotInvertible(String),

    #[error("invalid complete intersection: {0}")]
    InvalidSpec(String),

    #[error("twist a = {0} is below -1")]
    TwistOutOfRange(i64),

    #[error("index k = {k} out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("coordinate index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
