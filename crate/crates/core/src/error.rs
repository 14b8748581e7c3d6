use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({tail}, {head}) references a vertex outside 0..{vertex_count}")]
    VertexOutOfRange {
        tail: VertexId,
        head: VertexId,
        vertex_count: usize,
    },
    #[error("{0} vertices exceed the 32-bit vertex id space")]
    TooManyVertices(usize),
    #[error("{0} edges exceed the 32-bit edge id space")]
    TooManyEdges(usize),
    #[error("weight overflow on edge ({tail}, {head})")]
    WeightOverflow { tail: VertexId, head: VertexId },
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} outside 1..={vertex_count}")]
    VertexRange {
        line: usize,
        vertex: u64,
        vertex_count: usize,
    },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: i64 },
    #[error("missing `p sp` problem line")]
    MissingProblemLine,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors raised while decoding binary hierarchy files or mapping files.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("bad magic bytes: expected {expected:?}")]
    BadMagic { expected: &'static str },
    #[error("file truncated")]
    Truncated,
    #[error("checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    Checksum { stored: u32, computed: u32 },
    #[error("inconsistent content: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnpackError {
    #[error("edge ({tail}, {head}) is not part of the hierarchy")]
    MissingEdge { tail: VertexId, head: VertexId },
    #[error("shortcut expansion does not terminate; hierarchy is corrupted")]
    Cycle,
    #[error("original edge ({tail}, {head}) has weight {weight} beyond the input range")]
    WeightRange {
        tail: VertexId,
        head: VertexId,
        weight: u64,
    },
}
