//! Conflict-driven clause learning with two watched literals, activity-based
//! branching with phase saving, Luby restarts and incremental solving under
//! assumptions.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::heap::VarHeap;
use super::types::{Lit, Var};
use crate::model::{AtomSet, ClauseSet, Solution};

type CRef = u32;
const NO_REASON: CRef = CRef::MAX;

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

/// Tuning knobs. The defaults are what the rest of the crate relies on.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub var_decay: f64,
    pub clause_decay: f64,
    /// Conflicts per Luby unit.
    pub restart_base: u64,
    /// Learned clauses kept before half of them are deleted by activity.
    pub max_learnts: usize,
    /// Probability of a random decision. Zero keeps branching fully
    /// activity-driven.
    pub random_var_freq: f64,
    pub seed: u64,
    /// Emit one diagnostic line per restart on standard error.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            var_decay: 0.95,
            clause_decay: 0.999,
            restart_base: 64,
            max_learnts: 100_000,
            random_var_freq: 0.0,
            seed: 0,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unsat,
    /// The deadline passed or the interrupt flag was raised.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present iff `status` is `Sat`. Covers every solver variable,
    /// including auxiliary ones.
    pub model: Option<Solution>,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        self.status == SolveStatus::Sat
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub reductions: u64,
}

/// The enumeration or solve was cut short by the deadline or interrupt flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("solver interrupted")]
pub struct Interrupted;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedModel {
    pub projection: AtomSet,
    pub model: Solution,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: CRef,
    blocker: Lit,
}

#[derive(Debug, Clone)]
struct ClauseData {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SearchResult {
    Sat,
    Unsat,
    Restart,
    Interrupted,
}

pub struct Solver {
    cfg: SolverConfig,
    clauses: Vec<ClauseData>,
    free: Vec<CRef>,
    learnts: Vec<CRef>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<CRef>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    polarity: Vec<bool>,
    seen: Vec<bool>,
    analyze_stack: Vec<Lit>,
    analyze_clear: Vec<Lit>,
    ok: bool,
    model: Vec<bool>,
    simp_trail: usize,
    stats: SolverStats,
    deadline: Option<Instant>,
    interrupt: Option<Arc<AtomicBool>>,
    rng: ChaCha8Rng,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new(SolverConfig::default())
    }
}

impl std::fmt::Debug for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Solver")
            .field("vars", &self.num_vars())
            .field("clauses", &self.num_clauses())
            .field("learnts", &self.learnts.len())
            .field("ok", &self.ok)
            .finish()
    }
}

#[inline]
fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let v = assigns[l.var().index()];
    if l.is_positive() {
        v
    } else {
        -v
    }
}

/// Luby sequence value `y^k` for restart number `x`.
fn luby(y: f64, mut x: u64) -> f64 {
    let mut size = 1u64;
    let mut seq = 0i32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Self {
            cfg,
            clauses: Vec::new(),
            free: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            polarity: Vec::new(),
            seen: Vec::new(),
            analyze_stack: Vec::new(),
            analyze_clear: Vec::new(),
            ok: true,
            model: Vec::new(),
            simp_trail: 0,
            stats: SolverStats::default(),
            deadline: None,
            interrupt: None,
            rng,
        }
    }

    /// Loads a knowledge base; atom `i` becomes `Var::from_atom(i)`.
    pub fn from_clause_set(k: &ClauseSet, cfg: SolverConfig) -> Self {
        let mut s = Self::new(cfg);
        s.ensure_vars(k.universe().len());
        for c in k.clauses() {
            let lits: Vec<Lit> = c.literals().iter().map(|&l| Lit::from_dimacs(l)).collect();
            s.add_clause(&lits);
        }
        s
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn set_trace(&mut self, on: bool) {
        self.cfg.trace = on;
    }

    pub fn set_deadline(&mut self, deadline: Option<Instant>) {
        self.deadline = deadline;
    }

    pub fn set_interrupt(&mut self, flag: Option<Arc<AtomicBool>>) {
        self.interrupt = flag;
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    /// Live problem and learned clauses, excluding units on the trail.
    pub fn num_clauses(&self) -> usize {
        self.clauses.len() - self.free.len()
    }

    pub fn num_learnts(&self) -> usize {
        self.learnts.len()
    }

    /// False once the clause database is unsatisfiable without assumptions.
    pub fn is_consistent(&self) -> bool {
        self.ok
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var(self.assigns.len() as u32);
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.activity.push(0.0);
        self.polarity.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.insert(v.0, &self.activity);
        v
    }

    pub fn ensure_vars(&mut self, n: usize) {
        while self.num_vars() < n {
            self.new_var();
        }
    }

    /// A fresh literal guarding a retractable group of clauses. Clauses added
    /// with [`Solver::add_clause_under`] are enforced only while it is assumed.
    pub fn new_activation(&mut self) -> Lit {
        self.new_var().pos()
    }

    pub fn add_clause_under(&mut self, activation: Lit, lits: &[Lit]) -> bool {
        let mut guarded = Vec::with_capacity(lits.len() + 1);
        guarded.extend_from_slice(lits);
        guarded.push(!activation);
        self.add_clause(&guarded)
    }

    /// Retracts the group guarded by `activation` for good.
    pub fn deactivate(&mut self, activation: Lit) {
        self.add_clause(&[!activation]);
    }

    /// Adds a permanent clause. Returns false if the database became
    /// unsatisfiable. The empty clause is accepted.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        debug_assert_eq!(self.decision_level(), 0);
        if let Some(max) = lits.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(max + 1);
        }
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        let mut kept = Vec::with_capacity(c.len());
        for &l in &c {
            match lit_value(&self.assigns, l) {
                TRUE => return true,
                FALSE => {}
                _ => kept.push(l),
            }
        }
        match kept.len() {
            0 => {
                self.ok = false;
            }
            1 => {
                self.enqueue(kept[0], NO_REASON);
                self.ok = self.propagate().is_none();
            }
            _ => {
                let cr = self.alloc(kept, false);
                self.attach(cr);
            }
        }
        self.ok
    }

    /// Value of `var` in the last model, if the last solve was satisfiable.
    pub fn model_value(&self, var: Var) -> Option<bool> {
        self.model.get(var.index()).copied()
    }

    fn model_solution(&self) -> Solution {
        self.model
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// Decides satisfiability of the clause database together with the
    /// assumption literals.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveOutcome {
        let status = self.solve_status(assumptions);
        let model = (status == SolveStatus::Sat).then(|| self.model_solution());
        SolveOutcome { status, model }
    }

    pub fn solve_status(&mut self, assumptions: &[Lit]) -> SolveStatus {
        self.model.clear();
        self.stats.solves += 1;
        if !self.ok {
            return SolveStatus::Unsat;
        }
        if self.out_of_time() {
            return SolveStatus::Unknown;
        }
        if let Some(max) = assumptions.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(max + 1);
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SolveStatus::Unsat;
        }
        self.simplify();

        let mut restarts = 0u64;
        let status = loop {
            let budget = (luby(2.0, restarts) * self.cfg.restart_base as f64) as u64;
            match self.search(budget, assumptions) {
                SearchResult::Sat => break SolveStatus::Sat,
                SearchResult::Unsat => break SolveStatus::Unsat,
                SearchResult::Interrupted => break SolveStatus::Unknown,
                SearchResult::Restart => {
                    restarts += 1;
                    self.stats.restarts += 1;
                    if self.cfg.trace {
                        eprintln!(
                            "c restart {} conflicts {} decisions {} learnts {} vars {} clauses {}",
                            self.stats.restarts,
                            self.stats.conflicts,
                            self.stats.decisions,
                            self.learnts.len(),
                            self.num_vars(),
                            self.num_clauses()
                        );
                    }
                }
            }
        };
        self.cancel_until(0);
        status
    }

    /// All distinct projections onto `projection` of models consistent with
    /// `assumptions`, up to `limit`. Blocking clauses live under a dedicated
    /// activation literal that is retracted before returning.
    pub fn enumerate_models(
        &mut self,
        projection: &[Var],
        assumptions: &[Lit],
        limit: Option<usize>,
    ) -> Result<Vec<ProjectedModel>, Interrupted> {
        let act = self.new_activation();
        let mut assumed = assumptions.to_vec();
        assumed.push(act);
        let mut out = Vec::new();
        let result = loop {
            if limit.is_some_and(|n| out.len() >= n) {
                break Ok(());
            }
            match self.solve_status(&assumed) {
                SolveStatus::Unsat => break Ok(()),
                SolveStatus::Unknown => break Err(Interrupted),
                SolveStatus::Sat => {}
            }
            let mut block = Vec::with_capacity(projection.len());
            let mut p = AtomSet::new();
            for &v in projection {
                let val = self.model[v.index()];
                if val {
                    p.insert(v.atom());
                }
                block.push(v.lit(!val));
            }
            out.push(ProjectedModel {
                projection: p,
                model: self.model_solution(),
            });
            self.add_clause_under(act, &block);
        };
        self.deactivate(act);
        result.map(|()| out)
    }

    #[inline]
    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        lit_value(&self.assigns, l)
    }

    fn enqueue(&mut self, l: Lit, reason: CRef) {
        let v = l.var().index();
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = if l.is_positive() { TRUE } else { FALSE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn alloc(&mut self, lits: Vec<Lit>, learnt: bool) -> CRef {
        let data = ClauseData {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        };
        let cr = if let Some(cr) = self.free.pop() {
            self.clauses[cr as usize] = data;
            cr
        } else {
            self.clauses.push(data);
            (self.clauses.len() - 1) as CRef
        };
        if learnt {
            self.learnts.push(cr);
        }
        cr
    }

    fn attach(&mut self, cr: CRef) {
        let c = &self.clauses[cr as usize].lits;
        debug_assert!(c.len() >= 2);
        let (a, b) = (c[0], c[1]);
        self.watches[(!a).code()].push(Watcher { cref: cr, blocker: b });
        self.watches[(!b).code()].push(Watcher { cref: cr, blocker: a });
    }

    fn rebuild_watches(&mut self) {
        for w in &mut self.watches {
            w.clear();
        }
        for cr in 0..self.clauses.len() {
            if !self.clauses[cr].deleted {
                self.attach(cr as CRef);
            }
        }
    }

    fn propagate(&mut self) -> Option<CRef> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.code()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cr = w.cref;
                let clause = &mut self.clauses[cr as usize];
                if clause.deleted {
                    continue;
                }
                let c = &mut clause.lits;
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                let nw = Watcher { cref: cr, blocker: first };
                if first != w.blocker && lit_value(&self.assigns, first) == TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    if lit_value(&self.assigns, c[k]) != FALSE {
                        c.swap(1, k);
                        self.watches[(!c[1]).code()].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if lit_value(&self.assigns, first) == FALSE {
                    conflict = Some(cr);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, cr);
                }
            }
            ws.truncate(j);
            self.watches[p.code()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: Var) {
        let i = v.index();
        self.activity[i] += self.var_inc;
        if self.activity[i] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
            self.heap.rebuild(&self.activity);
        }
        self.heap.increased(v.0, &self.activity);
    }

    fn bump_clause(&mut self, cr: CRef) {
        let c = &mut self.clauses[cr as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    #[inline]
    fn abstract_level(&self, v: Var) -> u32 {
        1 << (self.level[v.index()] & 31)
    }

    /// First-UIP conflict analysis with recursive minimization.
    fn analyze(&mut self, mut confl: CRef) -> (Vec<Lit>, usize) {
        let mut learnt: Vec<Lit> = vec![Lit::from_dimacs(1)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let dl = self.decision_level() as u32;

        loop {
            self.bump_clause(confl);
            let start = usize::from(p.is_some());
            let len = self.clauses[confl as usize].lits.len();
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var();
                if !self.seen[v.index()] && self.level[v.index()] > 0 {
                    self.bump_var(v);
                    self.seen[v.index()] = true;
                    if self.level[v.index()] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            confl = self.reason[lit.var().index()];
            self.seen[lit.var().index()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = !p.expect("conflict has a UIP");

        self.analyze_clear.clear();
        self.analyze_clear.extend_from_slice(&learnt);
        let abs = learnt[1..].iter().fold(0u32, |acc, l| acc | self.abstract_level(l.var()));
        let mut j = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[l.var().index()] == NO_REASON || !self.lit_redundant(l, abs) {
                learnt[j] = l;
                j += 1;
            }
        }
        learnt.truncate(j);
        for k in 0..self.analyze_clear.len() {
            let v = self.analyze_clear[k].var().index();
            self.seen[v] = false;
        }

        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var().index()] as usize
        };
        (learnt, bt)
    }

    fn lit_redundant(&mut self, p: Lit, abs: u32) -> bool {
        self.analyze_stack.clear();
        self.analyze_stack.push(p);
        let top = self.analyze_clear.len();
        while let Some(q) = self.analyze_stack.pop() {
            let cr = self.reason[q.var().index()];
            debug_assert_ne!(cr, NO_REASON);
            let len = self.clauses[cr as usize].lits.len();
            for k in 1..len {
                let r = self.clauses[cr as usize].lits[k];
                let v = r.var();
                if !self.seen[v.index()] && self.level[v.index()] > 0 {
                    if self.reason[v.index()] != NO_REASON && self.abstract_level(v) & abs != 0 {
                        self.seen[v.index()] = true;
                        self.analyze_stack.push(r);
                        self.analyze_clear.push(r);
                    } else {
                        for x in top..self.analyze_clear.len() {
                            let u = self.analyze_clear[x].var().index();
                            self.seen[u] = false;
                        }
                        self.analyze_clear.truncate(top);
                        return false;
                    }
                }
            }
        }
        true
    }

    fn cancel_until(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let stop = self.trail_lim[lvl];
        for k in (stop..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var();
            self.assigns[v.index()] = UNDEF;
            self.reason[v.index()] = NO_REASON;
            self.polarity[v.index()] = l.is_positive();
            self.heap.insert(v.0, &self.activity);
        }
        self.trail.truncate(stop);
        self.trail_lim.truncate(lvl);
        self.qhead = stop;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        if self.cfg.random_var_freq > 0.0 && !self.heap.is_empty() && self.rng.gen::<f64>() < self.cfg.random_var_freq {
            let v = self.heap.get(self.rng.gen_range(0..self.heap.len()));
            if self.assigns[v as usize] == UNDEF {
                return Some(Var(v).lit(self.polarity[v as usize]));
            }
        }
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v as usize] == UNDEF {
                return Some(Var(v).lit(self.polarity[v as usize]));
            }
        }
        None
    }

    fn locked(&self, cr: CRef) -> bool {
        let l = self.clauses[cr as usize].lits[0];
        self.value(l) == TRUE && self.reason[l.var().index()] == cr
    }

    /// Deletes the less active half of the learned clauses.
    fn reduce_db(&mut self) {
        self.stats.reductions += 1;
        let mut ls = std::mem::take(&mut self.learnts);
        ls.sort_by(|&a, &b| {
            let (x, y) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            x.activity.total_cmp(&y.activity).then(a.cmp(&b))
        });
        let half = ls.len() / 2;
        let mut kept = Vec::with_capacity(ls.len() - half);
        for (i, cr) in ls.into_iter().enumerate() {
            if i < half && !self.locked(cr) {
                self.delete(cr);
            } else {
                kept.push(cr);
            }
        }
        self.learnts = kept;
        self.rebuild_watches();
    }

    fn delete(&mut self, cr: CRef) {
        let c = &mut self.clauses[cr as usize];
        c.deleted = true;
        c.lits = Vec::new();
        self.free.push(cr);
    }

    /// Removes clauses satisfied at the top level. Runs only at level 0.
    fn simplify(&mut self) {
        debug_assert_eq!(self.decision_level(), 0);
        if self.trail.len() == self.simp_trail {
            return;
        }
        for cr in 0..self.clauses.len() {
            let c = &self.clauses[cr];
            if c.deleted {
                continue;
            }
            if c.lits.iter().any(|&l| lit_value(&self.assigns, l) == TRUE) {
                self.delete(cr as CRef);
            }
        }
        for &l in &self.trail {
            self.reason[l.var().index()] = NO_REASON;
        }
        let clauses = &self.clauses;
        self.learnts.retain(|&cr| !clauses[cr as usize].deleted);
        self.rebuild_watches();
        self.simp_trail = self.trail.len();
    }

    fn out_of_time(&self) -> bool {
        self.interrupt.as_ref().is_some_and(|f| f.load(Ordering::Relaxed))
            || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn search(&mut self, budget: u64, assumptions: &[Lit]) -> SearchResult {
        let mut conflicts = 0u64;
        let mut ticks = 0u32;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SearchResult::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let cr = self.alloc(learnt, true);
                    self.attach(cr);
                    self.bump_clause(cr);
                    self.enqueue(first, cr);
                }
                self.var_inc /= self.cfg.var_decay;
                self.cla_inc /= self.cfg.clause_decay;
            } else {
                ticks = ticks.wrapping_add(1);
                if ticks & 255 == 0 && self.out_of_time() {
                    self.cancel_until(0);
                    return SearchResult::Interrupted;
                }
                if conflicts >= budget {
                    self.cancel_until(0);
                    return SearchResult::Restart;
                }
                if self.learnts.len() >= self.cfg.max_learnts {
                    self.reduce_db();
                }

                let mut next = None;
                while self.decision_level() < assumptions.len() {
                    let a = assumptions[self.decision_level()];
                    match self.value(a) {
                        TRUE => self.trail_lim.push(self.trail.len()),
                        FALSE => return SearchResult::Unsat,
                        _ => {
                            next = Some(a);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(a) => a,
                    None => {
                        self.stats.decisions += 1;
                        match self.pick_branch() {
                            Some(l) => l,
                            None => {
                                self.model = self.assigns.iter().map(|&v| v == TRUE).collect();
                                return SearchResult::Sat;
                            }
                        }
                    }
                };
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, NO_REASON);
            }
        }
    }
}
