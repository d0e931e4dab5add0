use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate point at indices {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got} at point {index}")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        index: usize,
    },

    #[error("zero-length vector")]
    ZeroVector,

    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(usize, usize),

    #[error("instance has {n} points, limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("construction degenerate: {0}")]
    ConstructionDegenerate(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("refusing to verify {n} points (cap {cap}); pass --force to override")]
    RefusedTooLarge { n: usize, cap: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
