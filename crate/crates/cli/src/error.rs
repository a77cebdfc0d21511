use std::path::PathBuf;

use thiserror::Error;

use crate::params::ParamError;
use crate::table::TableError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qsd_core::Error),
    #[error("{path}: {source}")]
    Params { path: PathBuf, source: ParamError },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qsd_core::Error::NumericalFailure(_)) => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        }
    }
}
