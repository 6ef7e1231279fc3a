use std::path::PathBuf;

use thiserror::Error;

/// Errors of the command line front end and its file formats.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] monoideal_core::Error),
    #[error("cache integrity error in {path} at p = {p}: stored {stored}, computed {computed}")]
    Integrity { path: PathBuf, p: u32, stored: String, computed: String },
    #[error("malformed cache file {path}: {message}")]
    CacheFormat { path: PathBuf, message: String },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 0 success, 1 domain, 2 input, 3 resource cap, 4 internal or cache
    /// integrity.
    pub fn exit_code(&self) -> i32 {
        use monoideal_core::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e.root() {
                E::Domain(_) => 1,
                E::Structural(_) | E::RingMismatch => 2,
                E::Resource { .. } => 3,
                E::Internal(_) | E::AtPower { .. } => 4,
            },
            CliError::Integrity { .. } | CliError::CacheFormat { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
