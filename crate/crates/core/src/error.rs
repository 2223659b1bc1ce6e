use thiserror::Error;

/// Errors shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {}", .0.join("; "))]
    Validity(Vec<String>),
    #[error("resource budget exhausted: {0}")]
    Resource(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ill-formed pair: {0}")]
    IllFormedPair(String),
    #[error("generator {index} is not an automorphism: {reason}")]
    NotAutomorphism { index: usize, reason: String },
    #[error("integer overflow in coordinate arithmetic")]
    Overflow,
    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    pub fn validity(msg: impl Into<String>) -> Self {
        Error::Validity(vec![msg.into()])
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
