use thiserror::Error;

/// Failures of a CLI run, split by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("unknown preset {0:?} (try `fano-sim preset --list`)")]
    UnknownPreset(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        source: std::io::Error,
    },
    #[error("numerical failure: {0}")]
    Numerical(#[from] fano_core::Error),
}

impl CliError {
    /// Core errors raised while validating user input are config errors.
    pub fn from_core_config(e: fano_core::Error) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownPreset(_) | CliError::Output { .. } => 1,
            CliError::Numerical(_) => 2,
        }
    }
}
