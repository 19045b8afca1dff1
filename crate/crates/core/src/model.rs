//! Knowledge bases over a propositional universe, their solutions, and
//! brute-force reference definitions of the four optimization criteria.
//!
//! The brute-force routines enumerate every assignment and are meant for
//! tests and verification of small instances only; they refuse universes
//! larger than a configurable cap.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use thiserror::Error;

/// Default cap on the universe size accepted by the brute-force oracles.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// A set of atom indices (1-based).
pub type AtomSet = BTreeSet<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("literal 0 is not a valid literal")]
    ZeroLiteral,
    #[error("literal {literal} refers to atom outside the universe of {size} atoms")]
    OutOfUniverse { literal: i64, size: usize },
    #[error("clause is tautological")]
    Tautology,
    #[error("knowledge bases have incompatible universes")]
    IncompatibleUniverses,
    #[error("brute-force oracle refused: universe of {size} atoms exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
}

/// The ordered collection of atoms a knowledge base talks about.
///
/// Atom `i` (1-based) has name `names[i - 1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VariableUniverse {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl VariableUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    /// A universe of `n` atoms named `1`..`n`.
    pub fn anonymous(n: usize) -> Self {
        let mut u = Self::new();
        for i in 1..=n {
            u.add(i.to_string()).expect("decimal names are unique");
        }
        u
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut u = Self::new();
        for n in names {
            u.add(n)?;
        }
        Ok(u)
    }

    /// Appends a fresh atom and returns its index.
    pub fn add(&mut self, name: impl Into<String>) -> Result<u32, ModelError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(ModelError::DuplicateAtom(name));
        }
        let idx = self.names.len() as u32 + 1;
        self.index.insert(name.clone(), idx);
        self.names.push(name);
        Ok(idx)
    }

    /// Renames atom `idx`. Fails if the new name is already taken by another atom.
    pub fn rename(&mut self, idx: u32, name: impl Into<String>) -> Result<(), ModelError> {
        let name = name.into();
        match self.index.get(&name) {
            Some(&other) if other == idx => return Ok(()),
            Some(_) => return Err(ModelError::DuplicateAtom(name)),
            None => {}
        }
        let old = std::mem::replace(&mut self.names[idx as usize - 1], name.clone());
        self.index.remove(&old);
        self.index.insert(name, idx);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: u32) -> Option<&str> {
        self.names.get((idx as usize).checked_sub(1)?).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, idx: u32) -> bool {
        idx >= 1 && (idx as usize) <= self.names.len()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// True if `self` is a prefix of `other` (same names at the same indices).
    pub fn is_prefix_of(&self, other: &VariableUniverse) -> bool {
        self.names.len() <= other.names.len() && self.names.iter().zip(&other.names).all(|(a, b)| a == b)
    }

    /// Renders a set of atoms as their names in ascending index order.
    pub fn render(&self, atoms: &AtomSet) -> Vec<&str> {
        atoms.iter().filter_map(|&a| self.name(a)).collect()
    }
}

/// A disjunction of literals, stored sorted by atom index with no duplicates.
///
/// Literals use the DIMACS convention: `+i` means atom `i` true, `-i` false.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    literals: Vec<i32>,
}

impl Clause {
    /// Canonicalizes `lits`. Rejects literal 0 and tautologies.
    pub fn new(lits: impl IntoIterator<Item = i32>) -> Result<Self, ModelError> {
        let mut literals: Vec<i32> = lits.into_iter().collect();
        if literals.contains(&0) {
            return Err(ModelError::ZeroLiteral);
        }
        literals.sort_by_key(|l| (l.unsigned_abs(), *l));
        literals.dedup();
        if literals.windows(2).any(|w| w[0] == -w[1]) {
            return Err(ModelError::Tautology);
        }
        Ok(Self { literals })
    }

    pub fn empty() -> Self {
        Self { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[i32] {
        &self.literals
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn max_atom(&self) -> u32 {
        self.literals.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// Evaluates the clause under the assignment whose true atoms are `true_atoms`.
    pub fn satisfied_by(&self, true_atoms: &AtomSet) -> bool {
        self.literals
            .iter()
            .any(|&l| true_atoms.contains(&l.unsigned_abs()) == (l > 0))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.literals {
            write!(f, "{l} ")?;
        }
        write!(f, "0")
    }
}

/// A knowledge base: a set of clauses over a universe.
#[derive(Debug, Clone)]
pub struct ClauseSet {
    universe: Arc<VariableUniverse>,
    clauses: IndexSet<Clause>,
}

impl ClauseSet {
    pub fn new(universe: VariableUniverse) -> Self {
        Self::with_universe(Arc::new(universe))
    }

    pub fn with_universe(universe: Arc<VariableUniverse>) -> Self {
        Self {
            universe,
            clauses: IndexSet::new(),
        }
    }

    /// Builds a clause set from literal lists. Tautologies are dropped.
    pub fn from_literals<I, C>(universe: VariableUniverse, clauses: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = i32>,
    {
        let mut cs = Self::new(universe);
        for c in clauses {
            cs.add_literals(c)?;
        }
        Ok(cs)
    }

    /// Adds a clause given as literals. Returns `Ok(false)` when the clause was
    /// a tautology or already present.
    pub fn add_literals(&mut self, lits: impl IntoIterator<Item = i32>) -> Result<bool, ModelError> {
        match Clause::new(lits) {
            Ok(c) => self.add(c),
            Err(ModelError::Tautology) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn add(&mut self, clause: Clause) -> Result<bool, ModelError> {
        if let Some(&l) = clause
            .literals()
            .iter()
            .find(|l| !self.universe.contains(l.unsigned_abs()))
        {
            return Err(ModelError::OutOfUniverse {
                literal: l as i64,
                size: self.universe.len(),
            });
        }
        Ok(self.clauses.insert(clause))
    }

    pub fn universe(&self) -> &VariableUniverse {
        &self.universe
    }

    pub fn shared_universe(&self) -> Arc<VariableUniverse> {
        Arc::clone(&self.universe)
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn satisfied_by(&self, true_atoms: &AtomSet) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(true_atoms))
    }

    /// The universe-wide relevant set.
    pub fn all_atoms(&self) -> RelevantSet {
        RelevantSet::new((1..=self.universe.len() as u32).collect())
    }
}

/// The composition `k1 ∘ k2`: clause-set union.
///
/// `k2`'s universe must be a prefix of `k1`'s (identical universes included).
pub fn compose(k1: &ClauseSet, k2: &ClauseSet) -> Result<ClauseSet, ModelError> {
    if !k2.universe.is_prefix_of(&k1.universe) {
        return Err(ModelError::IncompatibleUniverses);
    }
    let mut out = k1.clone();
    for c in k2.clauses() {
        out.add(c.clone())?;
    }
    Ok(out)
}

/// One solution of a knowledge base: the set of atoms assigned true.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub true_atoms: AtomSet,
}

impl Solution {
    pub fn new(true_atoms: AtomSet) -> Self {
        Self { true_atoms }
    }
}

impl FromIterator<u32> for Solution {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// The atoms subject to optimization.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RelevantSet {
    atoms: AtomSet,
}

impl RelevantSet {
    pub fn new(atoms: AtomSet) -> Self {
        Self { atoms }
    }

    /// Checks every atom lies within `universe`.
    pub fn checked(atoms: AtomSet, universe: &VariableUniverse) -> Result<Self, ModelError> {
        if let Some(&a) = atoms.iter().find(|&&a| !universe.contains(a)) {
            return Err(ModelError::OutOfUniverse {
                literal: a as i64,
                size: universe.len(),
            });
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: u32) -> bool {
        self.atoms.contains(&atom)
    }
}

impl FromIterator<u32> for RelevantSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// `s|R = s ∩ R`.
pub fn restrict(s: &Solution, r: &RelevantSet) -> AtomSet {
    s.true_atoms.intersection(&r.atoms).copied().collect()
}

/// The four optimization criteria over restrictions to a relevant set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    Setmax,
    Setmin,
    Cardmax,
    Cardmin,
}

impl Criterion {
    pub fn is_maximize(self) -> bool {
        matches!(self, Criterion::Setmax | Criterion::Cardmax)
    }
}

/// Enumerates `sol(k)` by trying every assignment. Refuses universes above `cap`.
pub fn brute_force_solutions_capped(k: &ClauseSet, cap: usize) -> Result<BTreeSet<Solution>, ModelError> {
    let n = k.universe().len();
    if n > cap {
        return Err(ModelError::CapExceeded { size: n, cap });
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let atoms: AtomSet = (0..n as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if k.satisfied_by(&atoms) {
            out.insert(Solution::new(atoms));
        }
    }
    Ok(out)
}

pub fn brute_force_solutions(k: &ClauseSet) -> Result<BTreeSet<Solution>, ModelError> {
    brute_force_solutions_capped(k, DEFAULT_BRUTE_FORCE_CAP)
}

/// Selects the optimal restrictions of `solutions` to `r` under `criterion`.
pub fn optimal_restrictions<'a, I>(solutions: I, r: &RelevantSet, criterion: Criterion) -> BTreeSet<AtomSet>
where
    I: IntoIterator<Item = &'a Solution>,
{
    let restricted: BTreeSet<AtomSet> = solutions.into_iter().map(|s| restrict(s, r)).collect();
    match criterion {
        Criterion::Cardmax | Criterion::Cardmin => {
            let sizes = restricted.iter().map(BTreeSet::len);
            let best = if criterion == Criterion::Cardmax { sizes.max() } else { sizes.min() };
            restricted.iter().filter(|p| Some(p.len()) == best).cloned().collect()
        }
        Criterion::Setmax => restricted
            .iter()
            .filter(|p| !restricted.iter().any(|q| q.len() > p.len() && p.is_subset(q)))
            .cloned()
            .collect(),
        Criterion::Setmin => restricted
            .iter()
            .filter(|p| !restricted.iter().any(|q| q.len() < p.len() && q.is_subset(p)))
            .cloned()
            .collect(),
    }
}

/// Brute-force Setmax/Setmin/Cardmax/Cardmin as distinct restrictions to `r`.
pub fn brute_force_setmax(
    k: &ClauseSet,
    r: &RelevantSet,
    criterion: Criterion,
) -> Result<BTreeSet<AtomSet>, ModelError> {
    let sols = brute_force_solutions(k)?;
    Ok(optimal_restrictions(&sols, r, criterion))
}
