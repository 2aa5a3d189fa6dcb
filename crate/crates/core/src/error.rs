use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("uniformity mismatch: {left} vs {right}")]
    UniformityMismatch { left: usize, right: usize },

    #[error("pattern has {got} vertices, at most {max} supported")]
    PatternTooLarge { got: usize, max: usize },

    #[error("{what} has {got} vertices, at most {max} supported")]
    TooManyVertices { what: &'static str, got: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    /// Stable identifier used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
            Error::UniformityMismatch { .. } => "uniformity_mismatch",
            Error::PatternTooLarge { .. } => "pattern_too_large",
            Error::TooManyVertices { .. } => "too_many_vertices",
            Error::Precondition(_) => "precondition",
            Error::Guard(_) => "guard",
            Error::Overflow(_) => "overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
