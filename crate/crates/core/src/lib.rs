//! Chess search engine with pluggable null-move pruning policies (standard,
//! verified, and three no-cutoff variants) and a test-suite harness that
//! compares them by tree size, solved positions and zugzwang handling.

pub mod board;
pub mod cli;
pub mod eval;
pub mod harness;
pub mod search;
