use thiserror::Error;

/// Errors raised by field construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is reducible over F_p")]
    Reducible(Vec<u32>),
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("field of size {size} exceeds the limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("the zero function has no algebraic degree")]
    ZeroFunction,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("function is not a permutation")]
    NotPermutation,
    #[error("algebraic degree {degree} exceeds p = {p}")]
    DegreeTooHigh { degree: usize, p: u32 },
    #[error("sum of squared norms has a non-rational term")]
    NonRationalSum,
    #[error("criterion structure violated: {0}")]
    CriterionViolated(String),
    #[error("points are not mutually distinct")]
    NotDistinct,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
