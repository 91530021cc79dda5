//! Input-node placement for structural controllability of directed
//! networks with a bound on the longest control chain.
//!
//! The crate covers the combinatorial core (matching and dominating-set leaf
//! removal, their coupling, exact solvers, LP export), random graph models
//! for ensemble experiments, and dense linear algebra for control-energy
//! evaluation. See the `examples/` directory for one runnable program per
//! capability, and the `lcc` binary for a command-line front end.

pub mod cli;
pub mod dominating;
pub mod energy;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod lcc_solver;
pub mod matching;
pub mod metrics;

pub use error::{Error, Result};
pub use graph::{ChainBound, DiGraph, InputSet};
pub use lcc_solver::{bounds, solve_heuristic, verify_input_set, Bounds, Method, Solution};
