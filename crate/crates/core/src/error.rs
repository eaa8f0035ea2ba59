use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("element is the identity")]
    IdentityElement,
    #[error("element is trivial")]
    TrivialElement,
    #[error("path endpoints do not match: path ends at {end}, next starts at {start}")]
    EndpointMismatch { end: VertexId, start: VertexId },
    #[error("path is not a loop (starts at {start}, ends at {end})")]
    NotALoop { start: VertexId, end: VertexId },
    #[error("loops based at different vertices ({0} vs {1})")]
    BaseMismatch(VertexId, VertexId),
    #[error("edge {edge} does not start at vertex {vertex}")]
    BadEdge { edge: EdgeId, vertex: VertexId },
    #[error("elements do not commute")]
    NotCommuting,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid graph of groups: {0}")]
    Invalid(String),
    #[error("enumeration cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Budget exhaustion is reported separately from mathematical answers.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SearchExhausted(_))
    }
}
