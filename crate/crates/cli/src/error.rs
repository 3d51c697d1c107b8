//! CLI error classification for the exit-code contract:
//! 0 success, 1 usage, 2 data error, 3 internal.

#[derive(Debug)]
pub enum CliError {
    /// Bad input data or environment (missing files, malformed records,
    /// validation failures, unreachable services) -> exit 2.
    Data(String),
    /// Unexpected internal failure -> exit 3.
    Internal(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Data(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<zbench_core::Error> for CliError {
    fn from(e: zbench_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<zbench_server::ServerError> for CliError {
    fn from(e: zbench_server::ServerError) -> Self {
        match e {
            zbench_server::ServerError::Internal(m) => CliError::Internal(m),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}
