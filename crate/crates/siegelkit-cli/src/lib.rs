//! Command-line front end for `siegelkit`: configuration, JSON reports,
//! sharded searches and the acceptance suites.

pub mod cli;
pub mod commands;
pub mod config;
pub mod report;
pub mod search;
pub mod suites;

pub use cli::{run, Outcome};
