//! Parameter sweeps and oracle validation runs behind the `jcm` binary.

pub mod format;
pub mod sweep;
pub mod validate;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] jcm_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub use sweep::{run_sweep, Dataset, Format, Output, SweepConfig};
pub use validate::{run_validate, ValidationReport};
