use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const INCONSISTENT: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Core(#[from] mirrorloc::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use mirrorloc::Error as E;
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Io { .. } | CliError::Csv(_) => exit::IO,
            CliError::Core(e) => match e {
                E::Inconsistent { .. } => exit::INCONSISTENT,
                E::NonPositiveInput(_) | E::NonFinite(_) | E::InvalidCount(_) | E::NoBeacons => exit::CONFIG,
                // degenerate placement plus rays that cannot reach the mirror
                _ => exit::DEGENERATE,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
