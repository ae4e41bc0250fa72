use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid algebra type: {0}")]
    InvalidType(String),

    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    RankMismatch {
        weight: String,
        got: usize,
        expected: usize,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not fundamental")]
    NotFundamental(String),

    #[error("weight {0} is not minuscule")]
    NotMinuscule(String),

    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("character is not Weyl-symmetric at weight {0}")]
    NotSymmetric(String),

    #[error("division by zero in {0}")]
    ZeroDenominator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown role `{role}` for {algebra}")]
    UnknownRole { role: String, algebra: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(String),
}
