//! Command-line front end for `airy_gap`: config parsing, report and CSV
//! emission, and the `det`, `compare`, `stats`, `parametrix` and `sweep`
//! commands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod parametrix;
pub mod report;
