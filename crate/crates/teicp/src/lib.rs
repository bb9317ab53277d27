//! File formats, experiment harness and command-line front end for the
//! `teicp-core` solver.

pub mod cli;
pub mod format;
pub mod harness;
pub mod report;

pub use teicp_core as core;
