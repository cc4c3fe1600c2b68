use std::io;

use thiserror::Error;

use crate::instance::GraphKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    /// A field of an instance or packing file violates its invariant.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("expected a {expected} instance, got {found}")]
    KindMismatch { expected: GraphKind, found: GraphKind },

    #[error("packing has {found} trees but the instance asks for K = {expected}")]
    TreeCount { expected: usize, found: usize },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("DIMACS line {line}: {reason}")]
    Dimacs { line: usize, reason: String },

    #[error("invalid CNF: {0}")]
    Cnf(String),

    #[error("child vector {index} has length {len}, need at least {k}")]
    ShortVector { index: usize, len: usize, k: usize },

    #[error("packing does not verify against the instance ({0} violations)")]
    Unverified(usize),

    #[error("witness tree contains both literals of variable {0}")]
    ConflictingLiterals(usize),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
