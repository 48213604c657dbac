use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KacError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("weight is not regular (repeated entry within one side)")]
    NonRegular,

    #[error("weight is not dominant")]
    NotDominant,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("positions ({even}, {odd}) do not form an atypical pair")]
    NotAtypicalPair { even: usize, odd: usize },

    #[error("degree of atypicality mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("theta_{s} = {value} is outside 0..={s}")]
    ThetaOutOfRange { s: usize, value: usize },

    #[error("dimension mismatch: gl({m1}|{n1}) vs gl({m2}|{n2})")]
    DimensionMismatch { m1: usize, n1: usize, m2: usize, n2: usize },

    #[error("theta {0} is not in the primitive index set of the weight")]
    ThetaNotInThetaLambda(String),

    #[error("malformed code: {0}")]
    MalformedCode(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("strip invariant violated: {0}")]
    StripInvariantViolation(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, KacError>;
