//! Command-line front end for `waring-core`: expression parsing, text and
//! JSON rendering of certificates, and command dispatch.

pub mod app;
pub mod parse;
pub mod render;

pub use app::{run, Cli, ExitCode};
pub use parse::{parse_form, parse_linear_form, parse_omega, parse_operator, ParseError};
