use std::path::{Path, PathBuf};

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] uplift_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Core(e) => match e.root() {
                uplift_core::Error::Convergence { .. } => 3,
                _ => 2,
            },
            CliError::Io { .. } => 4,
            CliError::ReplayMismatch(_) => 1,
        }
    }
}
