use thiserror::Error;

/// Everything that can go wrong while building or combining objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("vertex {vertex} out of range (algebra has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
