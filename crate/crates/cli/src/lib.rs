//! Library side of the `psxform` command-line tool: configuration, seeded
//! test fields, verification suites and the subcommand implementations.

pub mod commands;
pub mod config;
pub mod fields;
pub mod report;
pub mod suites;
