use std::path::PathBuf;

use thiserror::Error;

/// Failure of a CLI command, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Numerical(#[from] nakagami_aber::Error),

    /// A computed value violated the output contract (not finite, negative,
    /// or above 1 for an exact-kernel method).
    #[error("{0}")]
    InvalidResult(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} self-test group(s) failed")]
    SelftestFailed(usize),
}

impl CliError {
    pub const USAGE: u8 = 2;
    pub const NON_CONVERGENCE: u8 = 3;
    pub const IO: u8 = 4;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Clap(e) => {
                if e.use_stderr() {
                    Self::USAGE
                } else {
                    0
                }
            }
            CliError::Usage(_) => Self::USAGE,
            CliError::Numerical(e) if e.is_convergence_failure() => Self::NON_CONVERGENCE,
            CliError::Numerical(_) => Self::USAGE,
            CliError::InvalidResult(_) => Self::NON_CONVERGENCE,
            CliError::Io { .. } => Self::IO,
            CliError::SelftestFailed(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
