use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live on different quivers")]
    QuiverMismatch,
    #[error("truncation degrees differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("invalid rule for arrow `{arrow}`: {reason}")]
    InvalidRule { arrow: String, reason: String },
    #[error("endomorphism is not unitriangular")]
    NotUnitriangular,
    #[error("limit composition stalled: {0}")]
    Stall(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("cannot flip arc {arc}: {reason}")]
    FlipImpossible { arc: u32, reason: String },
    #[error("conditions violated: {0}")]
    ConditionsViolated(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("mutation impossible at vertex `{vertex}`: {reason}")]
    Mutation { vertex: String, reason: String },
    #[error("reduction failed: {0}")]
    Reduction(String),
    #[error("certificate unavailable: {0}")]
    Uncertified(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
