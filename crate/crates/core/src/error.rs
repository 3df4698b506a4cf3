use thiserror::Error;

use crate::certificate::Certificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    NotConnectedGraph,
    #[error("instance too large: {what} (limit {limit})")]
    TooLarge { what: String, limit: usize },
    #[error("graph context mismatch: expected n = {expected}, found n = {found}")]
    ContextMismatch { expected: usize, found: usize },
    #[error("a many-sided separation needs at least two sides, got {0}")]
    TooFewSides(usize),
    #[error("bad index set {indices:?} for a separation with {sides} sides")]
    BadIndexSet { indices: Vec<usize>, sides: usize },
    #[error("removing {0} leaves fewer than two components")]
    NotACutset(String),
    #[error("separations {0} and {1} cross")]
    CrossingPair(String, String),
    #[error("family is not laminar: {0} crosses {1}")]
    NotLaminar(String, String),
    #[error("tree is not deciduous: leaves {0} and {1} are an odd distance apart")]
    NotDeciduous(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("expected a 2-sided separation, got {0} sides")]
    NotTwoSided(usize),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant violated: {}", .0.check)]
    InternalInvariant(Box<Certificate>),
}
