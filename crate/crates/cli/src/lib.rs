//! Library side of the `gspec` command: scenarios, reports and subcommands.

pub mod commands;
pub mod report;
pub mod scenario;

pub use commands::{exit_code, run, Command, Options};
pub use report::{Report, SCHEMA_VERSION};
pub use scenario::{resolve, Scenario, BUILTIN_SCENARIOS};
