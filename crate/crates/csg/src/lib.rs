//! Command-line front end for `csg-core`: JSON formats for groups,
//! algebras and Env morphisms, and the `csg` subcommands.
//!
//! Exit codes: 0 on success, 1 when a verification finds violations, 2 on
//! usage, input or schema errors.

pub mod cli;
pub mod output;
pub mod schema;

pub use cli::run;
