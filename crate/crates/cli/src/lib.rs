//! Command-line front end for the screened-potential energy solvers.

pub mod commands;
pub mod compute;
pub mod config;
pub mod error;
pub mod output;
pub mod reference;
pub mod verify;

pub use commands::run;
pub use error::CliError;
