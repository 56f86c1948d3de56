use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{d} = p^n (p^m + 1) has no decomposition with p = {p}")]
    NotInJ { p: u64, d: u64 },
    #[error("malformed basis element {0:?} for d = {1}")]
    MalformedBasis(Vec<usize>, usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
