use thiserror::Error;

use crate::hypergraph::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge count mismatch: header declares {declared_red} red / {declared_blue} blue, found {found_red} / {found_blue}")]
    EdgeCountMismatch {
        declared_red: usize,
        declared_blue: usize,
        found_red: usize,
        found_blue: usize,
    },

    #[error("invalid instance: {0}")]
    Invalid(ValidationReport),

    #[error("assignment has length {got}, instance has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("instance too large: n = {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("assignment is not disjoint covers")]
    NotDisjointCovers,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
