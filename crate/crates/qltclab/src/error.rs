use std::path::PathBuf;

use thiserror::Error;

use crate::alist::AlistError;
use crate::bundle::BundleError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qltclab_core::Error),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("{}: {source}", path.display())]
    Alist { path: PathBuf, source: AlistError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Statements that fail verification exit with this code and nothing else does.
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// IO, malformed files and computations that exceed the cap.
pub const EXIT_RUNTIME: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use qltclab_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(E::BadParameter(_) | E::BadIndex { .. } | E::ShapeMismatch(_)) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}
