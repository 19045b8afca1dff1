//! Incremental CDCL satisfiability engine.

mod heap;
mod solver;
mod types;

pub use solver::{Interrupted, ProjectedModel, SolveOutcome, SolveStatus, Solver, SolverConfig, SolverStats};
pub use types::{Lit, Var};
