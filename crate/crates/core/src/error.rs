use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid digit {0:?}: expected one of 1,2,4,7 or i,j,k,e")]
    InvalidDigit(char),

    #[error("word length must be at least 1")]
    EmptyWord,

    #[error("word length {0} exceeds the supported maximum of {max}", max = crate::basis::MAX_ORDER)]
    OrderTooLarge(usize),

    #[error("length mismatch: expected order {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("packed word has bits set above lane {lanes}")]
    StrayBits { lanes: usize },

    #[error("order {order} exceeds the exhaustive scan cap of {cap}")]
    ScanTooLarge { order: usize, cap: usize },

    #[error("the identity word is central; its signed centralizer is the whole group of order {group_order}")]
    CentralWord { group_order: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
