use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differential does not square to zero at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("vector is not a cocycle in degree {degree}")]
    NotACocycle { degree: i64 },
    #[error("short exact sequence violated: {0}")]
    ExactnessViolation(String),
    #[error("not a chain map: {0}")]
    ChainMapViolation(String),
    #[error("no lift exists: {0}")]
    InfeasibleLift(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("isomorphism does not intertwine differentials: {0}")]
    IntertwiningFailure(String),
    #[error("cosimplicial identity fails: {0}")]
    CosimplicialIdentity(String),
    #[error("size overflow: {0}")]
    SizeOverflow(String),
    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
