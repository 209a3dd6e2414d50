use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or interval lies outside a function's legal domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-supplied parameter violates its contract.
    #[error("argument error: {0}")]
    Argument(String),

    /// A value does not fit a fixed-point format or an input lies outside a
    /// table's interval.
    #[error("range error: {0}")]
    Range(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "E_DOMAIN",
            Error::Argument(_) => "E_ARG",
            Error::Range(_) => "E_RANGE",
            Error::Parse(_) => "E_PARSE",
            Error::Io { .. } => "E_IO",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
