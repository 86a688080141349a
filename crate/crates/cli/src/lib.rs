//! Command-line front ends for the solver and the benchmark harness, plus
//! generators for test corpora.

pub mod app;
pub mod corpus;
pub mod harness;
