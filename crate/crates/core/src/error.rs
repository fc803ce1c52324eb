use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field of order {p}^{k} is outside the supported range")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("polynomial {0:?} is not monic irreducible of the requested degree")]
    NotIrreducible(Vec<u32>),
    #[error("characteristic 2 is not supported here")]
    EvenCharacteristic,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {0:?} is not in X_{1}")]
    NotInXN(Vec<u32>, u32),
    #[error("part {part} at index {index} is even")]
    EvenPart { index: usize, part: u32 },
    #[error("{divisor} does not divide every part of {parts:?}")]
    NotDivisible { parts: Vec<u32>, divisor: u32 },
    #[error("ambiguous case classification: {0}")]
    AmbiguousCase(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("element does not normalize V")]
    NotNormalizing,
    #[error("no orthonormal basis found over this field")]
    NoOrthonormalBasis,
    #[error("matrix is not {0}")]
    NotNilpotent(&'static str),
    #[error("enumeration of {needed} candidates exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("central character is not defined on this group: {0}")]
    BadCentralCharacter(String),
    #[error("character is not stable under tau")]
    NotTauStable,
    #[error("central character is not F-stable: {0}")]
    NotFStable(String),
    #[error("empty fiber: {0}")]
    EmptyFiber(String),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
