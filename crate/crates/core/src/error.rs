use std::path::PathBuf;

use thiserror::Error;

use crate::model::StatementKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("statement kind {0:?} has no code in this alphabet")]
    UnknownKind(StatementKind),

    #[error("code {0} is not part of this alphabet")]
    UnknownCode(u32),

    #[error("token {0:?} is not a skeleton token of this alphabet")]
    UnknownToken(String),

    #[error("sequence database is empty")]
    EmptyDatabase,

    #[error("min support {got} out of range: {reason}")]
    SupportOutOfRange { got: String, reason: String },

    #[error("invalid sequence database line {line}: {message}")]
    InvalidSeqDb { line: usize, message: String },

    #[error("invalid regex sub-pattern file line {line}: {message}")]
    InvalidRegexFile { line: usize, message: String },

    #[error("invalid lexicon line {line}: {message}")]
    InvalidLexicon { line: usize, message: String },

    #[error("unknown report format {0:?} (expected \"text\" or \"records\")")]
    UnknownFormat(String),

    #[error("malformed report records: {0}")]
    MalformedRecords(String),

    #[error("invalid glob pattern {0:?}: {1}")]
    InvalidGlob(String, String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
