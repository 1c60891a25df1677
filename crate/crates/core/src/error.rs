use std::fmt;

use thiserror::Error;

/// Location-tagged failure from one of the text parsers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the parsed text (0-based).
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision loss: {0}")]
    Precision(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("pole in disc: image is not a disc")]
    PoleInDisc,
    #[error("pole outside open disc: image of the complement is not a disc")]
    PoleOutsideDisc,
    #[error("outside fundamental domain hypothesis: {0}")]
    OutsideFundamentalDomain(String),
    #[error("degenerate point: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error("outside decomposition hypotheses: {0}")]
    OutsideDecomposition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("singular linear system")]
    Singular,
    #[error("non-integral slope field: {0}")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
