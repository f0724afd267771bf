use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("algebra is not finite dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("path basis exceeds the limit of {0} elements")]
    TooLarge(usize),
    #[error("algebra is not radical square zero: {0}")]
    NotRadicalSquareZero(String),
    #[error("algebra is not directed: {0}")]
    NotDirected(String),
    #[error("vertex sets differ: {0}")]
    VertexMismatch(String),
    #[error("operation needs characteristic 0, field has characteristic {0}")]
    UnsupportedField(u64),
    #[error("vector is not in Ker δ¹")]
    InputNotInKernel,
    #[error("not a walk: {0}")]
    NotAWalk(String),
    #[error("θ-image is not in the relative kernel")]
    ImageNotInRelativeKernel,
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for errors caused by malformed or inadmissible input.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Verification(_) | Error::ImageNotInRelativeKernel
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
