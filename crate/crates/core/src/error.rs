//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the simulator, the pipeline and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("measurement error: {0}")]
    Measurement(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("sampling error: {0}")]
    Sampling(String),
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-friendly name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Capacity(_) => "capacity",
            Error::Index(_) => "index",
            Error::Dimension(_) => "dimension",
            Error::Measurement(_) => "measurement",
            Error::Domain(_) => "domain",
            Error::Input(_) => "input",
            Error::Sampling(_) => "sampling",
            Error::Config { .. } => "config",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
