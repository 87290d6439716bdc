use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kernel not finite index: the kernel matrix is singular")]
    SingularKernel,
    #[error("exponent matrix violates condition ({condition}): {detail}")]
    ExponentMatrix { condition: u8, detail: String },
    #[error("invalid cyclic parameters: {0}")]
    CyclicParameters(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator {index} of the lower subgroup is not contained in the upper one")]
    NotContained { index: usize },
    #[error("the group is not cyclic")]
    NotCyclic,
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Assertion(_) | Error::NotContained { .. } => 4,
            _ => 2,
        }
    }
}
