// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

use kaonlab::KaonError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{path}: missing column '{column}'")]
    Schema { path: String, column: String },
    #[error("{path}:{line}: {msg}")]
    Row {
        path: String,
        line: u64,
        msg: String,
    },
    #[error(transparent)]
    Physics(#[from] KaonError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => 2,
            CliError::Schema { .. } | CliError::Row { .. } => 3,
            CliError::Physics(_) => 4,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
