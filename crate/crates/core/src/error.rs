//! Error type shared by all core modules.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("duplicate id `{id}`{}", context_suffix(.context))]
    DuplicateId { id: String, context: String },

    #[error("invalid ranking for query `{query_id}`: {msg}")]
    InvalidRanking { query_id: String, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("analyzer mismatch: index built with `{expected}`, query uses `{got}`")]
    AnalyzerMismatch { expected: String, got: String },

    #[error("dimension mismatch for id `{id}`: expected {expected}, got {got}")]
    DimensionMismatch {
        id: String,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value in vector `{id}`")]
    NonFiniteValue { id: String },

    #[error("negative weight {weight} for term `{term}` in vector `{id}`")]
    NegativeWeight {
        id: String,
        term: String,
        weight: f64,
    },

    #[error("malformed passage id `{0}`: expected `<doc_id><sep><window_index>`")]
    MalformedPassageId(String),

    #[error("missing datasets: {}", .0.join(", "))]
    MissingDatasets(Vec<String>),

    #[error("index format error in {path}: {msg}")]
    IndexFormat { path: PathBuf, msg: String },
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
