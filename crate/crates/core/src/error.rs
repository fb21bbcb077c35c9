use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} is out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("arrow `{0}` does not belong to the quiver")]
    UnknownArrow(String),

    #[error("arrow id `{0}` is used more than once")]
    DuplicateArrow(String),

    #[error("path is not composable: {0}")]
    InvalidPath(String),

    #[error("relation is not admissible: {0}")]
    InvalidRelation(String),

    #[error("arrow `{0}` carries no monomial label")]
    MissingLabel(String),

    #[error("missing data: {0}")]
    MissingData(&'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid weight matrix: {0}")]
    InvalidWeights(String),

    #[error("invalid torus element: {0}")]
    InvalidTorusElement(String),

    #[error("subset enumeration over {n} nodes exceeds the cap of {cap}")]
    CapacityExceeded { n: usize, cap: usize },

    #[error("quiver is not a chain: {0}")]
    NotChain(String),

    #[error("vectors do not span a single line")]
    NotCollinear,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("Cox coordinates lie in the irrelevant locus: {0}")]
    IrrelevantLocus(String),

    #[error("fiber coordinate: {0}")]
    Fiber(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
