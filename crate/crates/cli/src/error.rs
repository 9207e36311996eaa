// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

use std::io;

use thiserror::Error;

/// Process exit status on success.
pub const EXIT_OK: u8 = 0;
/// Reading or writing a file or stream failed.
pub const EXIT_IO: u8 = 1;
/// Invalid flags, config keys or parameter values.
pub const EXIT_USAGE: u8 = 2;
/// The simulation hit a numerical degeneracy.
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Core(#[from] gausscollide_core::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Core(_) => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
