use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("saturation did not stabilize within {0} iterations")]
    SaturationLimit(usize),

    #[error("expected a curve (Krull dimension 2 of R/I), found dimension {0}")]
    NotACurve(usize),

    #[error("resolution of a saturated curve must have length at most 3, got {0}")]
    UnexpectedResolutionLength(usize),

    #[error("Pfaffian of an odd-size ({0}x{0}) matrix")]
    OddPfaffian(usize),

    #[error("invalid skew-symmetric matrix: {0}")]
    InvalidMatrix(String),

    #[error("infeasible degree pattern: {0}")]
    InfeasibleDegrees(String),

    #[error("invalid indices: {0}")]
    InvalidIndices(String),

    #[error("ideal has codimension {actual}, needs at least {required}")]
    CodimensionTooSmall { required: usize, actual: usize },

    #[error("no complete intersection of type {degrees:?} found after {attempts} attempts: {reason}")]
    CiSamplingExhausted {
        degrees: Vec<u32>,
        attempts: usize,
        reason: String,
    },

    #[error("forms are not a regular sequence: {0}")]
    NotRegularSequence(String),

    #[error("complete intersection is not contained in the ideal")]
    NotContained,

    #[error("the ideal is itself the complete intersection; its residual is the unit ideal")]
    TrivialLink,

    #[error("degree bookkeeping failed: {before} + {after} != {product}")]
    DegreeMismatch { before: i64, after: i64, product: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("double link check failed: {0}")]
    ClaimFailed(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
