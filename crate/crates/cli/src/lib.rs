//! Front end for `qdisc`: spec files in, text or JSON reports out.

pub mod commands;
pub mod fixtures;
pub mod spec;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] qdisc::Error),
}

impl CliError {
    pub fn input(msg: String) -> Self {
        CliError::Input(msg)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Input(_) => 2,
            CliError::Core(e) => e.exit_code(),
        }
    }
}

/// A finished command: both renderings plus the process exit status.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: String,
    pub status: i32,
}

impl Output {
    pub fn new<T: serde::Serialize>(report: &T, text: String, status: i32) -> Self {
        let json = serde_json::to_string_pretty(report).expect("reports serialize");
        Output { text, json, status }
    }
}
