use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config at {pointer}: {message}")]
    ConfigInvalid { pointer: String, message: String },
    #[error("unknown task {name:?} at {pointer}")]
    UnknownTask { pointer: String, name: String },
    #[error("golden file {0} not found")]
    GoldenMissing(String),
    #[error(transparent)]
    Core(#[from] wildram_core::Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    pub fn invalid(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::ConfigInvalid { pointer: pointer.into(), message: message.into() }
    }

    /// Errors that exit with status 2.
    pub fn is_config(&self) -> bool {
        matches!(self, CliError::ConfigInvalid { .. } | CliError::UnknownTask { .. } | CliError::GoldenMissing(_))
    }
}
