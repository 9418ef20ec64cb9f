use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: wrong lengths, mismatched contexts or block sizes.
    #[error("structural error: {0}")]
    Structural(String),

    /// Input outside the domain of an operation (e.g. a non-dominant weight).
    #[error("domain error: {0}")]
    Domain(String),

    /// Highest-weight peeling drove a multiplicity negative.
    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
