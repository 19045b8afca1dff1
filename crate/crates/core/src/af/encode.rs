use crate::model::{ClauseSet, RelevantSet, VariableUniverse};

use super::ArgumentationFramework;

/// CNF whose models, projected to the in-atoms, are the admissible sets.
#[derive(Debug, Clone)]
pub struct AdmissibilityEncoding {
    pub clauses: ClauseSet,
    /// `in_atom[a]` is the atom index of `in(a)`.
    pub in_atom: Vec<u32>,
    /// All in-atoms.
    pub relevant: RelevantSet,
}

impl AdmissibilityEncoding {
    /// Argument index of an in-atom.
    pub fn argument(&self, atom: u32) -> usize {
        atom as usize - 1
    }
}

/// One variable `in(a)` per argument, with
/// - `¬in(a) ∨ ¬in(b)` for every attack `a → b` (a unit for self-attacks),
/// - `¬in(a) ∨ ∨_{c → b} in(c)` for every attacker `b` of `a`.
pub fn encode_admissible(af: &ArgumentationFramework) -> AdmissibilityEncoding {
    let universe = VariableUniverse::from_names(af.names().iter().map(|n| format!("in({n})")))
        .expect("argument names are unique");
    let mut clauses = ClauseSet::new(universe);
    let var = |a: usize| a as i32 + 1;
    for (a, b) in af.attacks() {
        clauses
            .add_literals([-var(a), -var(b)])
            .expect("atoms within universe");
    }
    for a in 0..af.len() {
        for &b in af.attackers_of(a) {
            let lits = std::iter::once(-var(a)).chain(af.attackers_of(b).iter().map(|&c| var(c)));
            clauses.add_literals(lits).expect("atoms within universe");
        }
    }
    let in_atom: Vec<u32> = (1..=af.len() as u32).collect();
    AdmissibilityEncoding {
        clauses,
        relevant: in_atom.iter().copied().collect(),
        in_atom,
    }
}
