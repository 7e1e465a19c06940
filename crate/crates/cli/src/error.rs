use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DISCREPANCY: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("closed form and oracle disagree: {0}")]
    Discrepancy(String),
    #[error(transparent)]
    Core(#[from] sdwitness_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use sdwitness_core::Error as E;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::IO,
            CliError::Discrepancy(_) => exit::DISCREPANCY,
            CliError::Core(
                E::OutOfRange { .. } | E::NotNormalized { .. } | E::InvalidConfig(_),
            ) => exit::USAGE,
            CliError::Core(_) => exit::DISCREPANCY,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
