//! Command-line front end: instance files, reports and SVG figures.

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;
pub mod svg;

pub use commands::{cmd_classify, cmd_tropicalize, cmd_verify, CommandOutput};
pub use error::CliError;
pub use instance::{instance_to_toml, parse_instance, Instance};

/// Environment variable holding the default working precision.
pub const PRECISION_ENV: &str = "MUMFORD_TROP_PRECISION";
