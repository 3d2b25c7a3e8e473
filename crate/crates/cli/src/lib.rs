//! Command-line workbench for exact verification of Hopf-Galois systems.
//!
//! The library side of the `hgw` binary: the session DSL
//! ([`dsl`]), run configuration ([`config`]), report serialization and
//! exit-code policy ([`report`]), and the command implementations
//! ([`commands`]).

pub mod commands;
pub mod config;
pub mod dsl;
pub mod report;
