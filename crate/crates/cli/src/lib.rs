//! Library side of the `msdecomp` command-line tool: the benchmark harness
//! and the report renderers, kept callable from integration tests.

pub mod harness;
pub mod report;
