//! Enumeration of subset-optimal solutions by iterated cardinality
//! optimization over an incremental SAT engine, with an abstract
//! argumentation frontend for preferred extensions and a benchmark harness.

pub mod af;
pub mod bench;
pub mod card;
pub mod dimacs;
pub mod enumerate;
pub mod model;
pub mod sat;

pub use model::{AtomSet, Clause, ClauseSet, Criterion, RelevantSet, Solution, VariableUniverse};
