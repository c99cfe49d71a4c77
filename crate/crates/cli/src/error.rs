use thiserror::Error;

/// Failures surfaced to the command line, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version text; not a failure.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Computation(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Info(_) => 0,
            Self::Usage(_) => 1,
            Self::Computation(_) | Self::Io(_) => 2,
            Self::VerifyFailed(_) => 3,
        }
    }
}
