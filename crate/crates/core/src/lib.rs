//! A constraint-programming solver for quantifier-free floating-point
//! (QF_FP) SMT-LIB problems.
//!
//! The pipeline has three stages:
//!
//! 1. [`smtlib`] parses a script into an expression DAG with its `define-fun`
//!    macros kept apart (model M0).
//! 2. [`rewrite`] inlines the macros to recover the program-level model (M1),
//!    factors common subexpressions, decomposes everything into elementary
//!    constraints (M2) and looks for contradictory inequality cycles.
//! 3. [`search`] runs depth-first search over floating-point interval domains
//!    maintained by the [`propagation`] engine, branching on M1's variables
//!    with a density heuristic, a 5-way split and prohibition-depth
//!    diversification.
//!
//! [`pipeline`] glues the stages together behind [`pipeline::SolverConfig`].

pub mod domain;
pub mod eval;
pub mod float;
pub mod pipeline;
pub mod propagation;
pub mod rewrite;
pub mod search;
pub mod smtlib;

pub use domain::{BoolDomain, FpDomain};
pub use float::{FpFormat, FpValue, RoundingMode};
pub use pipeline::{solve_script, Preset, RunReport, SolverConfig, Verdict};
