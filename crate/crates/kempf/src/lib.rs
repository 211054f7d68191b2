//! Command-line companion to `kempf-core`: JSON encodings of every result,
//! a small expression language for characters, and the `kempf` binary.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod json;
pub mod selftest;

pub use cli::{run, Outcome};
pub use error::{CliError, CliResult};
