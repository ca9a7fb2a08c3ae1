use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed JSON; `line` and `column` are 1-based.
    #[error("parse error: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("unknown function {0:?}")]
    UnknownFunction(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Math(#[from] euler_scan::Error),
}
