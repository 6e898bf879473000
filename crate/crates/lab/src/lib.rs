//! File formats, reports, DOT export and the command-line driver for
//! `bottleneck-core`.

pub mod cli;
pub mod dot;
pub mod format;
pub mod report;
pub mod verify;
