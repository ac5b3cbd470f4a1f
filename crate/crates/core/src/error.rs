use thiserror::Error;

use crate::dsl::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed algebra document: {0}")]
    MalformedAlgebra(String),

    #[error("operation '{op}': table length {got} ≠ {expected}")]
    TableLength {
        op: String,
        got: usize,
        expected: usize,
    },

    #[error("operation '{op}': entry {value} out of range at index {index}")]
    EntryOutOfRange {
        op: String,
        index: usize,
        value: u64,
    },

    #[error("algebra size must be positive")]
    EmptyUniverse,

    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("element {element} outside universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("{what} must be reflexive")]
    NotReflexive { what: String },

    #[error("{what} is not a congruence")]
    NotCongruence { what: String },

    #[error("{what} is not a tolerance")]
    NotTolerance { what: String },

    #[error("relation is not an equivalence")]
    NotEquivalence,

    #[error("{what}: size {size} exceeds bound {limit}")]
    SizeBound {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("strategy '{strategy}' is not available for algebras of size {size}")]
    StrategyMismatch { strategy: String, size: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("sort violation: {0}")]
    Sort(String),

    #[error("unknown builtin algebra '{0}'")]
    UnknownBuiltin(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
