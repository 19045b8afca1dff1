#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use setopt_core::{AtomSet, ClauseSet, RelevantSet, VariableUniverse};

/// Random 1–3 literal clauses over `n` anonymous atoms; tautologies dropped.
pub fn random_cnf(rng: &mut ChaCha8Rng, n: usize, m: usize) -> ClauseSet {
    let mut k = ClauseSet::new(VariableUniverse::anonymous(n));
    for _ in 0..m {
        let len = rng.gen_range(1..=3);
        let lits: Vec<i32> = (0..len)
            .map(|_| {
                let v = rng.gen_range(1..=n as i32);
                if rng.gen_bool(0.5) { v } else { -v }
            })
            .collect();
        k.add_literals(lits).unwrap();
    }
    k
}

pub fn random_relevant(rng: &mut ChaCha8Rng, n: usize) -> RelevantSet {
    RelevantSet::new((1..=n as u32).filter(|_| rng.gen_bool(0.6)).collect())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(xs: &[u32]) -> AtomSet {
    xs.iter().copied().collect()
}
