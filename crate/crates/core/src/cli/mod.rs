//! Expression parser, identity suites and the command-line front-end.

mod commands;
pub mod parse;
pub mod suites;

pub use commands::run;
pub use parse::{parse_expr, parse_expr_numeric, parse_scalar};
