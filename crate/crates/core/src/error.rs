use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node id {id} out of range for a graph with {n} nodes")]
    IdOutOfRange { id: usize, n: usize },

    #[error("self-loop on node {0} but self-loops are not allowed")]
    SelfLoop(usize),

    #[error("input set is empty")]
    EmptyInputSet,

    #[error("graph has {n} nodes, exact solver cap is {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("graph has no links")]
    EmptyGraph,

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("controllability Gramian is singular")]
    SingularGramian,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
