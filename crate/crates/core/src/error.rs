use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("elements belong to different algebras")]
    AmbientMismatch,
    /// A guard declined the computation (size limits, undecidable division, failed freeness).
    #[error("refused: {0}")]
    Refused(String),
    /// An internal consistency check fired; indicates an arithmetic bug or corrupted data.
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Refused(_) => 1,
            Error::InvalidInput(_) | Error::AmbientMismatch | Error::DivisionByZero => 2,
            Error::Assertion(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
