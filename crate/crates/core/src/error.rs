use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QgrError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),

    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("invalid JSON document: {0}")]
    Json(String),

    /// The path algebra has exponential growth; carries the doubly cyclic vertices.
    #[error("infinite GK-dimension: doubly cyclic vertices {0:?}")]
    NotFiniteGk(Vec<String>),

    #[error("`{0}` is not a cyclic vertex")]
    NotCyclicVertex(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("representation is not eventually periodic: {0}")]
    NotEventuallyPeriodic(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("enumeration exceeded cap of {0} items")]
    ExplosionCap(usize),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    /// An internal consistency check failed. Indicates a bug, never a bad input.
    #[error("internal assertion failed: {0}")]
    AssertionFailure(String),
}

pub type Result<T> = std::result::Result<T, QgrError>;
