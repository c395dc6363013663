//! Map files, parameter binding, rendering and the `polyinv` command line.

pub mod bind;
pub mod commands;
pub mod document;
pub mod parser;
pub mod render;

pub use commands::{run, Outcome, EXIT_INPUT, EXIT_NEGATIVE, EXIT_RESOURCE, EXIT_SUCCESS};
pub use document::{Expr, MapDocument};
pub use parser::{parse_map, ParseError, ParseErrorKind};
