//! File formats, random code generation and command implementations behind
//! the `residual` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod generate;

pub use error::CliError;
pub use format::{parse_code_file, parse_rational_vector, print_code_file};
pub use generate::{random_code, RandomSpec};
