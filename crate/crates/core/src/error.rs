use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where in an input document a parse error occurred (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coalition {mask:#x} references players outside 0..{n}")]
    InvalidCoalition { mask: u64, n: usize },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid probability: {0}")]
    Probability(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("{what} supports at most {cap}; {alternative}")]
    Capacity { what: String, cap: u64, alternative: String },

    #[error("ballot error: {0}")]
    Ballot(String),

    #[error("evidence error: {0}")]
    Evidence(String),

    #[error("query error: {0}")]
    Query(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{location}: {message}")]
    Parse { location: Location, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, cap: u64, alternative: impl Into<String>) -> Self {
        Error::Capacity { what: what.into(), cap, alternative: alternative.into() }
    }

    pub(crate) fn parse(file: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location { file: file.to_string(), line, column },
            message: message.into(),
        }
    }

    pub(crate) fn dimension(expected: usize, got: usize) -> Self {
        Error::Dimension { expected, got }
    }

    /// Whether this is a cap on problem size (as opposed to bad data).
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
