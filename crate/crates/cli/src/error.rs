use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Convergence(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<prandtl_core::Error> for CliError {
    fn from(e: prandtl_core::Error) -> Self {
        match e {
            prandtl_core::Error::Convergence { .. } => CliError::Convergence(e.to_string()),
            prandtl_core::Error::Accuracy { .. } | prandtl_core::Error::Oracle { .. } => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

pub fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
