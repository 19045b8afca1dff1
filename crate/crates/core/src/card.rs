//! Cardinality optimization over the SAT engine.
//!
//! Bounds are expressed with a totalizer: a tree of unary adders whose root
//! outputs `o_1..o_n` satisfy `o_j -> (at least j inputs true)` for lower
//! bounds and `(at least j inputs true) -> o_j` for upper bounds. A bound is
//! then a single assumption literal, so one encoding serves every threshold
//! of a linear search.

use std::time::Instant;

use crate::model::{AtomSet, RelevantSet, Solution};
use crate::sat::{Interrupted, Lit, SolveStatus, Solver, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    AtLeast,
    AtMost,
}

/// Unary counter over a list of inputs, with clauses guarded by an
/// activation literal.
#[derive(Debug, Clone)]
pub struct Totalizer {
    kind: BoundKind,
    guard: Lit,
    outputs: Vec<Lit>,
    aux: Vec<Var>,
}

impl Totalizer {
    pub fn build(solver: &mut Solver, inputs: &[Var], kind: BoundKind, guard: Lit) -> Self {
        let mut t = Totalizer {
            kind,
            guard,
            outputs: Vec::new(),
            aux: Vec::new(),
        };
        let leaves: Vec<Lit> = inputs.iter().map(|v| v.pos()).collect();
        if !leaves.is_empty() {
            t.outputs = t.node(solver, &leaves);
        }
        t
    }

    fn node(&mut self, solver: &mut Solver, inputs: &[Lit]) -> Vec<Lit> {
        if inputs.len() == 1 {
            return inputs.to_vec();
        }
        let (l, r) = inputs.split_at(inputs.len() / 2);
        let a = self.node(solver, l);
        let b = self.node(solver, r);
        let out: Vec<Lit> = (0..a.len() + b.len())
            .map(|_| {
                let v = solver.new_var();
                self.aux.push(v);
                v.pos()
            })
            .collect();
        let (p, q) = (a.len(), b.len());
        for i in 0..=p {
            for j in 0..=q {
                match self.kind {
                    // count(a) <= i and count(b) <= j  ->  not out[i + j]
                    BoundKind::AtLeast if i + j < p + q => {
                        let mut c = Vec::with_capacity(3);
                        if i < p {
                            c.push(a[i]);
                        }
                        if j < q {
                            c.push(b[j]);
                        }
                        c.push(!out[i + j]);
                        solver.add_clause_under(self.guard, &c);
                    }
                    // count(a) >= i and count(b) >= j  ->  out[i + j - 1]
                    BoundKind::AtMost if i + j > 0 => {
                        let mut c = Vec::with_capacity(3);
                        if i > 0 {
                            c.push(!a[i - 1]);
                        }
                        if j > 0 {
                            c.push(!b[j - 1]);
                        }
                        c.push(out[i + j - 1]);
                        solver.add_clause_under(self.guard, &c);
                    }
                    _ => {}
                }
            }
        }
        out
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn guard(&self) -> Lit {
        self.guard
    }

    pub fn num_inputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn aux(&self) -> &[Var] {
        &self.aux
    }

    /// Assumptions enforcing the bound `k` in this totalizer's direction.
    /// `None` means the bound is unsatisfiable (at-least with `k > n`).
    pub fn bound(&self, k: usize) -> Option<Vec<Lit>> {
        let n = self.outputs.len();
        match self.kind {
            BoundKind::AtLeast if k == 0 => Some(vec![self.guard]),
            BoundKind::AtLeast if k > n => None,
            BoundKind::AtLeast => Some(vec![self.guard, self.outputs[k - 1]]),
            BoundKind::AtMost if k >= n => Some(vec![self.guard]),
            BoundKind::AtMost => Some(vec![self.guard, !self.outputs[k]]),
        }
    }
}

/// A cardinality constraint over fresh auxiliaries, active while its
/// activation literal is assumed.
#[derive(Debug, Clone)]
pub struct CardinalityEncoding {
    pub kind: BoundKind,
    pub inputs: Vec<Var>,
    pub threshold: usize,
    pub aux: Vec<Var>,
    pub activation: Lit,
}

impl CardinalityEncoding {
    pub fn deactivate(&self, solver: &mut Solver) {
        solver.deactivate(self.activation);
    }
}

fn encode(solver: &mut Solver, inputs: &[Var], k: usize, kind: BoundKind) -> CardinalityEncoding {
    let activation = solver.new_activation();
    let mut aux = Vec::new();
    let trivial = match kind {
        BoundKind::AtLeast => k == 0,
        BoundKind::AtMost => k >= inputs.len(),
    };
    if !trivial {
        if kind == BoundKind::AtLeast && k > inputs.len() {
            solver.add_clause_under(activation, &[]);
        } else {
            let t = Totalizer::build(solver, inputs, kind, activation);
            let bound = t.bound(k).expect("threshold within range");
            solver.add_clause_under(activation, &bound[1..]);
            aux = t.aux;
        }
    }
    CardinalityEncoding {
        kind,
        inputs: inputs.to_vec(),
        threshold: k,
        aux,
        activation,
    }
}

/// At least `k` of `inputs` true, under a fresh activation literal.
/// `k = 0` adds nothing; `k > |inputs|` makes the activation literal false.
pub fn encode_at_least(solver: &mut Solver, inputs: &[Var], k: usize) -> CardinalityEncoding {
    encode(solver, inputs, k, BoundKind::AtLeast)
}

/// At most `k` of `inputs` true, under a fresh activation literal.
pub fn encode_at_most(solver: &mut Solver, inputs: &[Var], k: usize) -> CardinalityEncoding {
    encode(solver, inputs, k, BoundKind::AtMost)
}

/// A restriction to R together with a full solution witnessing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedSolution {
    pub restriction: AtomSet,
    pub witness: Solution,
}

/// All distinct restrictions of optimal cardinality, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimumBatch {
    pub optimum: usize,
    pub members: Vec<RestrictedSolution>,
}

impl OptimumBatch {
    pub fn restrictions(&self) -> impl Iterator<Item = &AtomSet> {
        self.members.iter().map(|m| &m.restriction)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleStats {
    pub calls: u64,
    pub solves: u64,
}

/// Cardmax/Cardmin oracle bound to one relevant set.
///
/// The totalizer over R is built on first use and reused by later calls;
/// every bound is passed as an assumption, so nothing the oracle does
/// constrains the user atoms once a call returns.
#[derive(Debug)]
pub struct CardinalityOracle {
    relevant: Vec<Var>,
    user_vars: usize,
    kind: BoundKind,
    totalizer: Option<Totalizer>,
    stats: OracleStats,
}

impl CardinalityOracle {
    /// `user_vars` is the number of solver variables that belong to the
    /// knowledge base; witnesses are trimmed to them.
    pub fn new(r: &RelevantSet, user_vars: usize, kind: BoundKind) -> Self {
        Self {
            relevant: r.atoms().iter().map(|&a| Var::from_atom(a)).collect(),
            user_vars,
            kind,
            totalizer: None,
            stats: OracleStats::default(),
        }
    }

    pub fn stats(&self) -> OracleStats {
        self.stats
    }

    fn count(&self, solver: &Solver) -> usize {
        self.relevant
            .iter()
            .filter(|&&v| solver.model_value(v) == Some(true))
            .count()
    }

    fn solve(&mut self, solver: &mut Solver, assumptions: &[Lit]) -> Result<bool, Interrupted> {
        self.stats.solves += 1;
        match solver.solve_status(assumptions) {
            SolveStatus::Sat => Ok(true),
            SolveStatus::Unsat => Ok(false),
            SolveStatus::Unknown => Err(Interrupted),
        }
    }

    /// Optimum restriction size and all restrictions achieving it, or
    /// `None` when the clause database is unsatisfiable. At most `limit`
    /// restrictions are collected.
    pub fn optimize(&mut self, solver: &mut Solver, limit: Option<usize>) -> Result<Option<OptimumBatch>, Interrupted> {
        self.stats.calls += 1;
        if !self.solve(solver, &[])? {
            return Ok(None);
        }
        let n = self.relevant.len();
        let mut k = self.count(solver);
        if self.totalizer.is_none() {
            let guard = solver.new_activation();
            self.totalizer = Some(Totalizer::build(solver, &self.relevant, self.kind, guard));
        }
        let tot = self.totalizer.clone().expect("built above");
        // linear search towards the optimum; the last unsatisfiable bound
        // proves optimality
        loop {
            let next = match self.kind {
                BoundKind::AtLeast if k < n => tot.bound(k + 1),
                BoundKind::AtMost if k > 0 => tot.bound(k - 1),
                _ => break,
            };
            let Some(assumptions) = next else { break };
            if !self.solve(solver, &assumptions)? {
                break;
            }
            k = self.count(solver);
        }
        let at_opt = tot.bound(k).expect("optimum is attainable");
        let found = solver.enumerate_models(&self.relevant, &at_opt, limit)?;
        let mut members: Vec<RestrictedSolution> = found
            .into_iter()
            .map(|pm| RestrictedSolution {
                restriction: pm.projection,
                witness: Solution::new(
                    pm.model
                        .true_atoms
                        .into_iter()
                        .filter(|&a| a as usize <= self.user_vars)
                        .collect(),
                ),
            })
            .collect();
        debug_assert!(members.iter().all(|m| m.restriction.len() == k));
        members.sort_by(|x, y| x.restriction.cmp(&y.restriction));
        Ok(Some(OptimumBatch { optimum: k, members }))
    }
}

fn one_shot(solver: &mut Solver, r: &RelevantSet, kind: BoundKind, limit: Option<usize>) -> Result<Option<OptimumBatch>, Interrupted> {
    let user_vars = solver.num_vars();
    let mut oracle = CardinalityOracle::new(r, user_vars, kind);
    let res = oracle.optimize(solver, limit);
    if let Some(t) = &oracle.totalizer {
        solver.deactivate(t.guard());
    }
    res
}

/// Cardmax(R, K) over the current clause database. Temporary encodings are
/// retracted before returning. Variables that exist at call time are treated
/// as user atoms for witnesses.
pub fn cardmax(solver: &mut Solver, r: &RelevantSet) -> Result<Option<OptimumBatch>, Interrupted> {
    one_shot(solver, r, BoundKind::AtLeast, None)
}

/// Cardmin(R, K); dual of [`cardmax`].
pub fn cardmin(solver: &mut Solver, r: &RelevantSet) -> Result<Option<OptimumBatch>, Interrupted> {
    one_shot(solver, r, BoundKind::AtMost, None)
}

/// Like [`cardmax`]/[`cardmin`] with a deadline.
pub fn optimize_until(
    solver: &mut Solver,
    r: &RelevantSet,
    kind: BoundKind,
    deadline: Option<Instant>,
) -> Result<Option<OptimumBatch>, Interrupted> {
    solver.set_deadline(deadline);
    let res = one_shot(solver, r, kind, None);
    solver.set_deadline(None);
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ClauseSet, VariableUniverse};
    use crate::sat::SolverConfig;

    fn set(xs: &[u32]) -> AtomSet {
        xs.iter().copied().collect()
    }

    fn example_one() -> Solver {
        let k = ClauseSet::from_literals(VariableUniverse::anonymous(3), [vec![-1, 2], vec![2, 3], vec![-2, -3]]).unwrap();
        Solver::from_clause_set(&k, SolverConfig::default())
    }

    fn count(kind: BoundKind, n: usize, k: usize) -> usize {
        let mut s = Solver::default();
        let inputs: Vec<Var> = (0..n).map(|_| s.new_var()).collect();
        let enc = encode(&mut s, &inputs, k, kind);
        s.enumerate_models(&inputs, &[enc.activation], None).unwrap().len()
    }

    #[test]
    fn at_least_counts() {
        assert_eq!(count(BoundKind::AtLeast, 3, 2), 4);
        assert_eq!(count(BoundKind::AtLeast, 3, 0), 8);
        assert_eq!(count(BoundKind::AtLeast, 3, 3), 1);
        assert_eq!(count(BoundKind::AtLeast, 3, 4), 0);
    }

    #[test]
    fn at_most_counts() {
        assert_eq!(count(BoundKind::AtMost, 3, 0), 1);
        assert_eq!(count(BoundKind::AtMost, 3, 1), 4);
        assert_eq!(count(BoundKind::AtMost, 3, 3), 8);
    }

    #[test]
    fn at_least_all_true_model() {
        let mut s = Solver::default();
        let inputs: Vec<Var> = (0..3).map(|_| s.new_var()).collect();
        let enc = encode_at_least(&mut s, &inputs, 3);
        let ms = s.enumerate_models(&inputs, &[enc.activation], None).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].projection, set(&[1, 2, 3]));
        assert!(enc.aux.iter().all(|v| v.atom() > 4));
    }

    #[test]
    fn deactivated_encoding_is_inert() {
        let mut s = Solver::default();
        let inputs: Vec<Var> = (0..3).map(|_| s.new_var()).collect();
        let enc = encode_at_least(&mut s, &inputs, 3);
        enc.deactivate(&mut s);
        assert_eq!(s.enumerate_models(&inputs, &[], None).unwrap().len(), 8);
    }

    #[test]
    fn cardmax_example_one() {
        let mut s = example_one();
        let r = RelevantSet::new(set(&[1, 2, 3]));
        let b = cardmax(&mut s, &r).unwrap().unwrap();
        assert_eq!(b.optimum, 2);
        assert_eq!(b.restrictions().cloned().collect::<Vec<_>>(), vec![set(&[1, 2])]);
        assert_eq!(b.members[0].witness.true_atoms, set(&[1, 2]));
    }

    #[test]
    fn cardmin_example_one() {
        let mut s = example_one();
        let r = RelevantSet::new(set(&[1, 2, 3]));
        let b = cardmin(&mut s, &r).unwrap().unwrap();
        assert_eq!(b.optimum, 1);
        assert_eq!(b.restrictions().cloned().collect::<Vec<_>>(), vec![set(&[2]), set(&[3])]);
    }

    #[test]
    fn cardmin_unconstrained_is_empty() {
        let mut s = Solver::default();
        s.ensure_vars(1);
        let b = cardmin(&mut s, &RelevantSet::new(set(&[1]))).unwrap().unwrap();
        assert_eq!(b.optimum, 0);
        assert_eq!(b.restrictions().cloned().collect::<Vec<_>>(), vec![set(&[])]);
    }

    #[test]
    fn unsat_is_no_solution() {
        let mut s = Solver::default();
        s.add_clause(&[Lit::from_dimacs(1)]);
        s.add_clause(&[Lit::from_dimacs(-1)]);
        let r = RelevantSet::new(set(&[1]));
        assert_eq!(cardmax(&mut s, &r).unwrap(), None);
        assert_eq!(cardmin(&mut s, &r).unwrap(), None);
    }

    #[test]
    fn empty_relevant_set() {
        let mut s = example_one();
        let b = cardmax(&mut s, &RelevantSet::default()).unwrap().unwrap();
        assert_eq!(b.optimum, 0);
        assert_eq!(b.members.len(), 1);
    }

    #[test]
    fn oracle_leaves_database_clean() {
        let mut s = example_one();
        let user = [Var(0), Var(1), Var(2)];
        let before = s.enumerate_models(&user, &[], None).unwrap().len();
        let r = RelevantSet::new(set(&[1, 2, 3]));
        cardmax(&mut s, &r).unwrap();
        cardmin(&mut s, &r).unwrap();
        assert_eq!(s.enumerate_models(&user, &[], None).unwrap().len(), before);
    }

    #[test]
    fn optimum_is_proved() {
        let mut s = example_one();
        let r = RelevantSet::new(set(&[1, 2, 3]));
        let b = cardmax(&mut s, &r).unwrap().unwrap();
        let vars: Vec<Var> = r.atoms().iter().map(|&a| Var::from_atom(a)).collect();
        let enc = encode_at_least(&mut s, &vars, b.optimum + 1);
        assert_eq!(s.solve(&[enc.activation]).status, SolveStatus::Unsat);
    }

    #[test]
    fn past_deadline_interrupts() {
        let mut s = example_one();
        let r = RelevantSet::new(set(&[1, 2, 3]));
        // trivially easy instances may finish before the first deadline poll
        let res = optimize_until(&mut s, &r, BoundKind::AtLeast, Some(Instant::now()));
        assert!(res.is_err() || res.unwrap().unwrap().optimum == 2);
    }
}
