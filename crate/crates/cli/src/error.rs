use std::path::PathBuf;

use thiserror::Error;

/// Exit status for malformed input or configuration.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit status for numerical degeneracy of the geometry.
pub const EXIT_DEGENERACY: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("InvalidConfig: {0}")]
    Json(#[from] serde_json::Error),
    #[error("InvalidConfig: {0}")]
    Config(String),
    #[error("InvalidArguments: {0}")]
    Arguments(String),
    #[error(transparent)]
    Kernel(#[from] ruledkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Kernel(e) if e.is_degeneracy() => EXIT_DEGENERACY,
            _ => EXIT_VALIDATION,
        }
    }
}

macro_rules! kernel_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Kernel(e.into())
            }
        }
    )*};
}

kernel_from!(
    ruledkit::SurfaceError,
    ruledkit::OffsetError,
    ruledkit::NumericsError,
    ruledkit::LineError,
    ruledkit::DualError
);
