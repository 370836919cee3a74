use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("{m} edges requested but only {max} vertex pairs exist")]
    TooManyEdges { m: usize, max: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("line {0}: malformed")]
    Malformed(usize),
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(i64),
    #[error("unbalanced brackets")]
    UnbalancedBrackets,
    #[error("edge references undeclared node {0}")]
    EdgeBeforeNode(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// Errors from the exact solver path: encoding, decoding and the k search.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SatError {
    #[error("k = {k} outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("model does not decode to a valid tripartition: {0}")]
    InvalidModel(String),
    #[error("graph has {0} vertices; brute force is limited to 20")]
    TooLarge(usize),
    #[error("search timed out (lower bound {lower}, upper bound {upper:?})")]
    Timeout { lower: usize, upper: Option<usize> },
    #[error("solver failed: {0}")]
    Solver(String),
}

/// A precondition on algorithm input was violated.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("D is empty; no neighboring solution exists")]
    EmptyD,
}
