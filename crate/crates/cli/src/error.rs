//! CLI-level errors and their exit codes. Exit code 3 marks bad input of
//! any kind; exit code 2 is reserved for honest "could not decide within
//! bounds" outcomes, including bounds hit while validating input.

use std::fmt;

use crate::lexer::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io { message: String },
    Syntax(SyntaxError),
    Semantic { message: String },
    /// A bounded search gave up while building or checking the input.
    Undecided { message: String },
    Usage { message: String },
}

impl CliError {
    pub fn semantic(message: impl Into<String>) -> Self {
        CliError::Semantic {
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage {
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Undecided { .. } => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { message } => write!(f, "{message}"),
            CliError::Syntax(e) => write!(f, "syntax error: {e}"),
            CliError::Semantic { message } => write!(f, "semantic error: {message}"),
            CliError::Undecided { message } => write!(f, "undecided: {message}"),
            CliError::Usage { message } => write!(f, "usage error: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Syntax(e)
    }
}
