//! File-based frontend for `abst-core`: presentations and module specs in,
//! JSON reports out.

pub mod commands;
pub mod format;
pub mod report;

use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => EXIT_PARSE,
            CliError::Semantic(_) => EXIT_SEMANTIC,
        }
    }
}

impl From<abst_core::Error> for CliError {
    fn from(e: abst_core::Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}

/// Hex SHA-256 of the raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}
