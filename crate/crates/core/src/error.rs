use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by the analysis engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The adjacency oracle broke one of its contract invariants.
    #[error("oracle violation at ({u}, {v}): {reason}")]
    OracleViolation {
        u: VertexId,
        v: VertexId,
        reason: &'static str,
    },
    #[error("vertex {0} does not exist in this graph")]
    UnknownVertex(VertexId),
    #[error("radius {0} is not in the radius set")]
    UnknownRadius(u64),
    #[error("vertex {0} is outside the explored region")]
    Unexplored(VertexId),
    #[error("layer {requested} exceeds truncation depth {depth}")]
    Range { requested: usize, depth: usize },
    /// A certified claim would need exploration beyond the truncation.
    #[error("margin exhausted: {0}")]
    Margin(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("input too large for exhaustive check: {0}")]
    Scale(String),
    #[error("arrow too short: graph exhausted at depth {reached}, {requested} requested")]
    ArrowTooShort { reached: usize, requested: usize },
    #[error("explored subgraph is not a tree: edge ({0}, {1}) closes a cycle")]
    NotATree(VertexId, VertexId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid generator spec {spec:?}: {message}")]
    Generator { spec: String, message: String },
    #[error("vertex id overflow while generating neighbors of {0}")]
    IdOverflow(VertexId),
    #[error("exploration budget of {0} vertices exceeded")]
    Budget(usize),
    #[error("graph is disconnected: {0} is unreachable from the root")]
    Disconnected(VertexId),
    /// Two proven relations disagree. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
