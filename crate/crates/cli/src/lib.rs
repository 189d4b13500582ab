//! Text formats and the command-line front end for `geoarith`.

pub mod cli;
pub mod format;

pub use cli::{run, CliConfig};
pub use format::{parse_gseq, write_gseq, ParseError, Repr};
