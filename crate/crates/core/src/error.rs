use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} must exceed n = {n}")]
    PrimeTooSmall { p: u64, n: usize },
    #[error("precision exponent must be at least 1")]
    ZeroPrecision,
    #[error("ring context mismatch")]
    ContextMismatch,
    #[error("non-unit")]
    NonUnit,
    #[error("insufficient precision: requested {requested}, available {available}")]
    InsufficientPrecision { requested: u32, available: u32 },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("weight is not pure for the partition")]
    NotPure,
    #[error("functional does not restrict to (L^2)^(tensor e)")]
    NotSumSymmetric,
    #[error("weight is not symmetric")]
    NotSymmetric,
    #[error("expansion too large: {0} terms")]
    ExpansionTooLarge(u128),
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("variable set mismatch")]
    VariableMismatch,
    #[error("relabeling is not a bijection")]
    NotBijective,
    #[error("below Eisenstein range: k = {k} < n = {n}")]
    BelowEisensteinRange { k: i64, n: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
