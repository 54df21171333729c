use std::path::PathBuf;

use thiserror::Error;

/// Failures that stop a command before any record is evaluated.
/// All of them are input errors (exit status 1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Document(String),

    #[error("{0}")]
    Config(String),
}
