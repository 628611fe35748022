use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the command line tool: 1 for invalid input,
    /// 2 when a computation's precondition does not hold.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::BoundarySquare(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
