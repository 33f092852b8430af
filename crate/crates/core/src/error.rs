use thiserror::Error;

use crate::rat::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus {0} is too small (need g >= 3)")]
    GenusTooSmall(u32),
    #[error("genus {genus} needs {expected} boundary coefficients, got {got}")]
    WrongCoefficientCount { genus: u32, expected: usize, got: usize },
    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(Rat),
    #[error("g + 1 = {} is prime, so there is no Brill-Noether witness", .0 + 1)]
    GPlusOnePrime(u32),
    #[error("g + 1 = {} is not prime, so the Petri witness does not apply", .0 + 1)]
    GPlusOneNotPrime(u32),
    #[error("genus {0} is odd")]
    GenusOdd(u32),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("empty linear combination")]
    EmptyCombination,
    #[error("slope is undefined: boundary coefficient b_{index} = {value} is not positive")]
    NonpositiveBoundary { index: usize, value: Rat },
    #[error("reference class is zero")]
    ZeroClass,
    #[error("index {index} is outside {lo}..={hi}")]
    IndexOutOfRange { index: u64, lo: u64, hi: u64 },
    #[error("class is not an M-divisor (violated facets: {0})")]
    NotAnMDivisor(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("the lambda coefficient must be positive, got {0}")]
    NonpositiveLambda(Rat),
    #[error("k = {0} is too small for the reduction chain (need k >= 3)")]
    KTooSmall(u64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
