//! Library surface of the command-line workbench, split out so the
//! end-to-end tests can drive command execution and check the byte-stable
//! report formats in-process.

pub mod app;
pub mod output;
