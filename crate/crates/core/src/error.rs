use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(String),

    #[error("n = {n} exceeds the enumeration limit {limit} for the {variant} variant (use an explicit override)")]
    LimitExceeded {
        n: usize,
        limit: usize,
        variant: &'static str,
    },

    #[error("no closed form is known for spot {j} at n = {n}")]
    NoClosedForm { n: usize, j: usize },

    #[error("path has no peak in column {0}")]
    NoPeakInColumn(usize),

    #[error("not a Dyck path: {0}")]
    InvalidPath(String),

    #[error("cache schema mismatch in {path}: found {found}, expected {expected}")]
    CacheSchema {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    #[error("cache file {path} is corrupt: {reason}")]
    CacheIntegrity { path: PathBuf, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
