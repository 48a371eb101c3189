use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("metric arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("invalid path: vertices {from} and {to} are not adjacent")]
    InvalidPath { from: usize, to: usize },
    #[error("destination is unreachable")]
    Unreachable,
    #[error("no path satisfies every constraint")]
    NoFeasiblePath,
    #[error("neighborhood count would exceed the vertex count")]
    MaxLengthExceeded,
    #[error("negative weight cycle detected")]
    NegativeCycle,
    #[error("time limit exceeded")]
    Timeout,
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
