use thiserror::Error;

use crate::diagrams::{ObjWord, ValidationReport};

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "invalid orientation character {found:?} at position {position} (expected '+' or '-')"
    )]
    Parse { position: usize, found: char },

    #[error("invalid pairing: {0}")]
    InvalidPairing(ValidationReport),

    #[error(
        "boundary mismatch: first morphism ends at \"{found}\" but second starts at \"{expected}\""
    )]
    BoundaryMismatch { expected: ObjWord, found: ObjWord },

    #[error("enumeration over {points} points exceeds the limit of {limit}")]
    EnumerationBound { points: usize, limit: usize },

    #[error("array with {legs} legs at dimension {dim} exceeds the bound ({limit})")]
    LegBound {
        legs: usize,
        dim: usize,
        limit: usize,
    },

    #[error("circle count overflow")]
    CircleOverflow,

    #[error("arithmetic overflow in the {0} semiring")]
    ScalarOverflow(&'static str),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("leg mismatch: {0}")]
    LegMismatch(String),

    #[error("no duality data for object \"{0}\"")]
    MissingDuality(ObjWord),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("JSON schema violation at {path}: {message}")]
    Json { path: String, message: String },

    #[error("unknown law suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn json(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Json {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by a configured resource limit rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBound { .. } | Error::LegBound { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
