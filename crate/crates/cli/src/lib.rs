//! Library surface of the `colimkit` binary: the input language (lexer,
//! parser, canonical form), name resolution onto the kernel types, and the
//! report machinery shared by every subcommand.

pub mod ast;
pub mod canon;
pub mod commands;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod resolve;
