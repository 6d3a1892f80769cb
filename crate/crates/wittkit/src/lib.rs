//! Parsing, dispatch, and machine-readable reporting around witt-core:
//! everything the `wittkit` binary does, exposed as a library so the
//! acceptance suite can drive the same code paths.

pub mod commands;
pub mod parse;
pub mod report;

pub use report::{Report, SCHEMA_ID};
