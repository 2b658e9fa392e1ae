use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar: {0}")]
    MalformedScalar(String),
    #[error("limit diverges: {0}")]
    DivergentLimit(String),
    #[error("specialization hits a pole: {0}")]
    SpecializationPole(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("{value} is not a multiple of {n}")]
    NotMultiple { value: i64, n: i64 },
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("affine root has zero finite part")]
    ZeroFinitePart,
    #[error("malformed metaplectic element: {0}")]
    MalformedElement(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
