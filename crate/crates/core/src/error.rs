use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadVertex { vertex: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("malformed graph6: {0}")]
    BadGraph6(String),
    #[error("malformed edge list at line {line}: {msg}")]
    BadEdgeList { line: usize, msg: String },
    #[error("degree must be at least 1, got {0}")]
    BadDegree(usize),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("bad enumeration spec: {0}")]
    BadSpec(String),
    #[error("no graphs match: {0}")]
    NoGraphs(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bad_params(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}
