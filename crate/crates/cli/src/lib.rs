//! Command implementations behind the `fbclab` binary.

pub mod commands;
pub mod matrix_file;
pub mod table_csv;

use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILS: u8 = 1;
    pub const UNDECIDED: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const IO: u8 = 74;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] fbclab_core::Error),

    #[error("{path}: {source}")]
    Matrix {
        path: PathBuf,
        source: matrix_file::ParseError,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => exit::USAGE,
            CliError::Matrix { .. } | CliError::Csv(_) => exit::DATA,
            CliError::Io { .. } => exit::IO,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
