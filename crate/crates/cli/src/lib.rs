//! The `linkflows` command-line tool and the analytics HTTP API.

pub mod api;
mod cli;

pub use cli::{load_store, run, Cli, CliError};
