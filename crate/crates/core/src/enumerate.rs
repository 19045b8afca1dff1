//! Enumeration of Setmax(R, K) / Setmin(R, K) by iterated cardinality
//! optimization.
//!
//! Each round asks the cardinality oracle for every restriction of optimal
//! size, emits them, and permanently excludes them together with all their
//! subsets (maximize) or supersets (minimize). The next round's optimum is
//! therefore strictly worse, and the loop stops when the remaining clause
//! set is unsatisfiable.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::card::{BoundKind, CardinalityOracle, RestrictedSolution};
use crate::model::{AtomSet, Clause, ClauseSet, Criterion, RelevantSet};
use crate::sat::{Interrupted, Lit, Solver, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    fn bound(self) -> BoundKind {
        match self {
            Direction::Maximize => BoundKind::AtLeast,
            Direction::Minimize => BoundKind::AtMost,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub direction: Direction,
    /// Restrictions taken per oracle call; must be at least 1.
    pub batch_limit: Option<usize>,
    /// Abort with [`EnumError::SolutionCap`] once more than this many
    /// solutions would be emitted.
    pub max_solutions: Option<usize>,
    pub deadline: Option<Instant>,
    pub solver: SolverConfig,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            direction: Direction::Maximize,
            batch_limit: None,
            max_solutions: None,
            deadline: None,
            solver: SolverConfig::default(),
        }
    }
}

impl EnumerationConfig {
    pub fn maximize() -> Self {
        Self::default()
    }

    pub fn minimize() -> Self {
        Self {
            direction: Direction::Minimize,
            ..Self::default()
        }
    }

    pub fn with_batch_limit(mut self, limit: usize) -> Self {
        self.batch_limit = Some(limit);
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("batch limit must be at least 1")]
    InvalidBatchLimit,
    #[error("solution cap of {cap} exceeded")]
    SolutionCap { cap: usize },
    #[error("enumeration interrupted by deadline")]
    Interrupted,
}

impl From<Interrupted> for EnumError {
    fn from(_: Interrupted) -> Self {
        EnumError::Interrupted
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub optimum: usize,
    pub batch_size: usize,
    pub cumulative: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationTrace {
    pub iterations: Vec<IterationRecord>,
    /// Oracle invocations, including the final one that found nothing.
    pub oracle_calls: usize,
}

impl EnumerationTrace {
    pub fn optima(&self) -> Vec<usize> {
        self.iterations.iter().map(|r| r.optimum).collect()
    }

    /// Optima strictly decrease (maximize) or strictly increase (minimize).
    pub fn is_strictly_monotone(&self, direction: Direction) -> bool {
        self.iterations.windows(2).all(|w| match direction {
            Direction::Maximize => w[1].optimum < w[0].optimum,
            Direction::Minimize => w[1].optimum > w[0].optimum,
        })
    }

    /// One line per iteration, for diagnostics.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.iterations {
            s.push_str(&format!(
                "iteration {} optimum {} batch {} total {} elapsed {:.6}s\n",
                r.iteration,
                r.optimum,
                r.batch_size,
                r.cumulative,
                r.elapsed.as_secs_f64()
            ));
        }
        s.push_str(&format!("oracle calls {}\n", self.oracle_calls));
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct restrictions in emission order, each with a witness.
    pub solutions: Vec<RestrictedSolution>,
    pub trace: EnumerationTrace,
}

impl Enumeration {
    pub fn restrictions(&self) -> impl Iterator<Item = &AtomSet> {
        self.solutions.iter().map(|s| &s.restriction)
    }
}

/// Clauses excluding every restriction in `batch` together with all its
/// subsets: one clause `∨_{a ∈ R \ p} a` per restriction `p`.
pub fn no_subset_clauses<'a>(r: &RelevantSet, batch: impl IntoIterator<Item = &'a AtomSet>) -> Vec<Clause> {
    batch
        .into_iter()
        .map(|p| {
            debug_assert!(p.is_subset(r.atoms()));
            Clause::new(r.atoms().difference(p).map(|&a| a as i32)).expect("positive literals only")
        })
        .collect()
}

/// Clauses excluding every restriction in `batch` together with all its
/// supersets: one clause `∨_{a ∈ p} ¬a` per restriction `p`.
pub fn no_supset_clauses<'a>(r: &RelevantSet, batch: impl IntoIterator<Item = &'a AtomSet>) -> Vec<Clause> {
    batch
        .into_iter()
        .map(|p| {
            debug_assert!(p.is_subset(r.atoms()));
            Clause::new(p.iter().map(|&a| -(a as i32))).expect("negative literals only")
        })
        .collect()
}

/// Runs the enumeration on an already loaded solver whose first `user_vars`
/// variables are the knowledge base atoms, calling `emit` for each solution
/// as soon as its batch is known.
pub fn enumerate_on<F>(
    solver: &mut Solver,
    user_vars: usize,
    r: &RelevantSet,
    cfg: &EnumerationConfig,
    mut emit: F,
) -> Result<EnumerationTrace, EnumError>
where
    F: FnMut(&RestrictedSolution),
{
    if cfg.batch_limit == Some(0) {
        return Err(EnumError::InvalidBatchLimit);
    }
    let start = Instant::now();
    solver.set_deadline(cfg.deadline);
    let mut oracle = CardinalityOracle::new(r, user_vars, cfg.direction.bound());
    let mut trace = EnumerationTrace::default();
    let mut total = 0usize;
    let result = loop {
        trace.oracle_calls += 1;
        let batch = match oracle.optimize(solver, cfg.batch_limit) {
            Ok(Some(b)) => b,
            Ok(None) => break Ok(()),
            Err(e) => break Err(e.into()),
        };
        if let Some(cap) = cfg.max_solutions {
            if total + batch.members.len() > cap {
                break Err(EnumError::SolutionCap { cap });
            }
        }
        for m in &batch.members {
            emit(m);
        }
        total += batch.members.len();
        trace.iterations.push(IterationRecord {
            iteration: trace.iterations.len() + 1,
            optimum: batch.optimum,
            batch_size: batch.members.len(),
            cumulative: total,
            elapsed: start.elapsed(),
        });
        let blocking = match cfg.direction {
            Direction::Maximize => no_subset_clauses(r, batch.restrictions()),
            Direction::Minimize => no_supset_clauses(r, batch.restrictions()),
        };
        for c in blocking {
            let lits: Vec<Lit> = c.literals().iter().map(|&l| Lit::from_dimacs(l)).collect();
            solver.add_clause(&lits);
        }
    };
    solver.set_deadline(None);
    result.map(|()| trace)
}

/// Streams Setmax(R, K) (or Setmin in minimize mode) to `emit`.
pub fn enumerate_streaming<F>(k: &ClauseSet, r: &RelevantSet, cfg: &EnumerationConfig, emit: F) -> Result<EnumerationTrace, EnumError>
where
    F: FnMut(&RestrictedSolution),
{
    let mut solver = Solver::from_clause_set(k, cfg.solver.clone());
    enumerate_on(&mut solver, k.universe().len(), r, cfg, emit)
}

/// Collects Setmax(R, K) (or Setmin in minimize mode) as distinct
/// restrictions, in emission order.
pub fn enumerate_setmax(k: &ClauseSet, r: &RelevantSet, cfg: &EnumerationConfig) -> Result<Enumeration, EnumError> {
    let mut solutions = Vec::new();
    let trace = enumerate_streaming(k, r, cfg, |s| solutions.push(s.clone()))?;
    Ok(Enumeration { solutions, trace })
}

/// Computes the optima of `k` under any of the four criteria. The
/// cardinality criteria use a single oracle call; the subset criteria run
/// the full enumeration.
pub fn solve_criterion(
    k: &ClauseSet,
    r: &RelevantSet,
    criterion: Criterion,
    cfg: &EnumerationConfig,
) -> Result<Enumeration, EnumError> {
    let direction = if criterion.is_maximize() {
        Direction::Maximize
    } else {
        Direction::Minimize
    };
    let cfg = EnumerationConfig {
        direction,
        ..cfg.clone()
    };
    match criterion {
        Criterion::Setmax | Criterion::Setmin => enumerate_setmax(k, r, &cfg),
        Criterion::Cardmax | Criterion::Cardmin => {
            let mut solver = Solver::from_clause_set(k, cfg.solver.clone());
            solver.set_deadline(cfg.deadline);
            let mut oracle = CardinalityOracle::new(r, k.universe().len(), direction.bound());
            let batch = oracle.optimize(&mut solver, None)?;
            let mut trace = EnumerationTrace {
                oracle_calls: 1,
                ..Default::default()
            };
            let solutions = match batch {
                Some(b) => {
                    if let Some(cap) = cfg.max_solutions {
                        if b.members.len() > cap {
                            return Err(EnumError::SolutionCap { cap });
                        }
                    }
                    trace.iterations.push(IterationRecord {
                        iteration: 1,
                        optimum: b.optimum,
                        batch_size: b.members.len(),
                        cumulative: b.members.len(),
                        elapsed: Duration::ZERO,
                    });
                    b.members
                }
                None => Vec::new(),
            };
            Ok(Enumeration { solutions, trace })
        }
    }
}
