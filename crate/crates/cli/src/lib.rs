//! Workspace documents, subcommands and reports for the `ocoh` binary.

pub mod commands;
pub mod document;
pub mod report;

use std::fmt;

pub use commands::{run_command, Command, ComplexKind};
pub use document::{parse_workspace, SchemaError, WorkspaceDocument};
pub use report::{emit_report, Format, Report};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Schema(Vec<SchemaError>),
    Engine(ocoh::Error),
}

impl CliError {
    /// 2 for input and usage problems, 3 for internal inconsistencies.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(ocoh::Error::Logic(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Schema(errs) => {
                write!(f, "invalid workspace document:")?;
                for e in errs {
                    write!(f, "\n  {e}")?;
                }
                Ok(())
            }
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ocoh::Error> for CliError {
    fn from(e: ocoh::Error) -> Self {
        CliError::Engine(e)
    }
}
