//! Crate-wide error type and result alias.

use std::path::PathBuf;

/// Errors produced by the library and the CLI front end.
///
/// The CLI maps variants to exit codes: config errors → 1, I/O errors → 2,
/// domain/numeric failures → 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A mathematical or physical precondition was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A key/value configuration problem with a known source location.
    #[error("config error at line {line}, key `{key}`: {message}")]
    ConfigKey {
        key: String,
        line: usize,
        message: String,
    },

    /// A configuration problem without a file location (flags, derived grids).
    #[error("config error: {0}")]
    Config(String),

    /// Failed to read or write an output artifact.
    #[error("i/o error on `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// An internal numeric failure (non-finite integrand, lost eigenvalue
    /// bracket, level-crossing ambiguity, ...).
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// Process exit code for the CLI front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConfigKey { .. } | Error::Config(_) => 1,
            Error::Io { .. } => 2,
            Error::Domain(_) | Error::Numeric(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
