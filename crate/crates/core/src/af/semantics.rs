use std::collections::BTreeSet;

use crate::enumerate::{enumerate_on, Direction, EnumerationConfig, EnumerationTrace};
use crate::sat::Solver;

use super::{encode_admissible, AfError, ArgumentationFramework, Extension, BRUTE_FORCE_ARGS};

/// The sequence `∅, F(∅), F(F(∅)), …` up to and including its fixpoint.
pub fn grounded_iterates(af: &ArgumentationFramework) -> Vec<Vec<bool>> {
    let mut seq = vec![vec![false; af.len()]];
    loop {
        let next = af.characteristic(seq.last().expect("non-empty"));
        if &next == seq.last().expect("non-empty") {
            return seq;
        }
        seq.push(next);
    }
}

/// Least fixpoint of the characteristic function.
pub fn grounded_extension(af: &ArgumentationFramework) -> Extension {
    let seq = grounded_iterates(af);
    af.extension(seq.last().expect("non-empty"))
}

/// Preferred extensions in discovery order, with the enumeration trace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Preferred {
    pub extensions: Vec<Extension>,
    pub trace: EnumerationTrace,
}

/// Streams the preferred extensions of `af`: subset-maximal enumeration over
/// the admissibility encoding with R the in-atoms. Each extension is checked
/// admissible before it is passed on.
pub fn enumerate_preferred_streaming<F>(
    af: &ArgumentationFramework,
    cfg: &EnumerationConfig,
    mut emit: F,
) -> Result<EnumerationTrace, AfError>
where
    F: FnMut(&Extension),
{
    let enc = encode_admissible(af);
    let cfg = EnumerationConfig {
        direction: Direction::Maximize,
        ..cfg.clone()
    };
    let mut solver = Solver::from_clause_set(&enc.clauses, cfg.solver.clone());
    let mut bad = None;
    let trace = enumerate_on(&mut solver, af.len(), &enc.relevant, &cfg, |s| {
        if bad.is_some() {
            return;
        }
        let members = af.membership(s.restriction.iter().map(|&a| enc.argument(a)));
        let ext = af.extension(&members);
        if af.is_admissible(&members) {
            emit(&ext);
        } else {
            bad = Some(ext);
        }
    })?;
    match bad {
        Some(ext) => Err(AfError::NotAdmissible(ext.to_string())),
        None => Ok(trace),
    }
}

pub fn enumerate_preferred(af: &ArgumentationFramework, cfg: &EnumerationConfig) -> Result<Preferred, AfError> {
    let mut extensions = Vec::new();
    let trace = enumerate_preferred_streaming(af, cfg, |e| extensions.push(e.clone()))?;
    Ok(Preferred { extensions, trace })
}

/// The first extension [`enumerate_preferred`] would emit, computed with a
/// single cardinality-optimization call.
pub fn first_preferred(af: &ArgumentationFramework, cfg: &EnumerationConfig) -> Result<Extension, AfError> {
    let enc = encode_admissible(af);
    let mut solver = Solver::from_clause_set(&enc.clauses, cfg.solver.clone());
    solver.set_deadline(cfg.deadline);
    let mut oracle = crate::card::CardinalityOracle::new(&enc.relevant, af.len(), crate::card::BoundKind::AtLeast);
    let batch = oracle
        .optimize(&mut solver, None)
        .map_err(crate::enumerate::EnumError::from)?
        .expect("the empty set is always admissible");
    let first = &batch.members[0].restriction;
    let members = af.membership(first.iter().map(|&a| enc.argument(a)));
    let ext = af.extension(&members);
    if !af.is_admissible(&members) {
        return Err(AfError::NotAdmissible(ext.to_string()));
    }
    Ok(ext)
}

fn masks(af: &ArgumentationFramework) -> Result<Vec<u32>, AfError> {
    if af.len() > BRUTE_FORCE_ARGS {
        return Err(AfError::CapExceeded {
            size: af.len(),
            cap: BRUTE_FORCE_ARGS,
        });
    }
    Ok((0..af.len())
        .map(|a| af.attackers_of(a).iter().fold(0u32, |m, &b| m | 1 << b))
        .collect())
}

/// Every admissible set, by checking each subset against the definitions
/// directly. Refuses frameworks above [`BRUTE_FORCE_ARGS`] arguments.
pub fn brute_force_admissible(af: &ArgumentationFramework) -> Result<Vec<u32>, AfError> {
    let attackers = masks(af)?;
    let n = af.len();
    let admissible = |s: u32| {
        (0..n).filter(|&a| s >> a & 1 == 1).all(|a| {
            attackers[a] & s == 0 && (0..n).filter(|&b| attackers[a] >> b & 1 == 1).all(|b| attackers[b] & s != 0)
        })
    };
    Ok((0..(1u32 << n)).filter(|&s| admissible(s)).collect())
}

/// ⊆-maximal admissible sets, by brute force.
pub fn brute_force_preferred(af: &ArgumentationFramework) -> Result<BTreeSet<Extension>, AfError> {
    let adm = brute_force_admissible(af)?;
    let n = af.len();
    Ok(adm
        .iter()
        .filter(|&&s| !adm.iter().any(|&t| t != s && t & s == s))
        .map(|&s| af.extension(&(0..n).map(|a| s >> a & 1 == 1).collect::<Vec<_>>()))
        .collect())
}
