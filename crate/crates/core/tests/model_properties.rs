use std::collections::BTreeSet;

use proptest::prelude::*;

use setopt_core::model::{brute_force_setmax, brute_force_solutions, compose, restrict};
use setopt_core::{ClauseSet, Criterion, RelevantSet, Solution, VariableUniverse};

fn clauses(n: i32) -> impl Strategy<Value = Vec<Vec<i32>>> {
    let lit = (1..=n, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
    prop::collection::vec(prop::collection::vec(lit, 1..=3), 0..16)
}

fn build(n: usize, cs: &[Vec<i32>]) -> ClauseSet {
    let mut k = ClauseSet::new(VariableUniverse::anonymous(n));
    for c in cs {
        k.add_literals(c.iter().copied()).unwrap();
    }
    k
}

type Clauses = Vec<Vec<i32>>;

/// Three clause sets over one universe, plus a relevant-set mask.
fn instance() -> impl Strategy<Value = (usize, Clauses, Clauses, Clauses, Vec<bool>)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            Just(n),
            clauses(n as i32),
            clauses(n as i32),
            clauses(n as i32),
            prop::collection::vec(any::<bool>(), n),
        )
    })
}

fn relevant(mask: &[bool]) -> RelevantSet {
    RelevantSet::new((1..=mask.len() as u32).filter(|&a| mask[a as usize - 1]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn restrict_is_idempotent(atoms in prop::collection::btree_set(1u32..20, 0..10),
                              r in prop::collection::btree_set(1u32..20, 0..10)) {
        let r = RelevantSet::new(r);
        let once = restrict(&Solution::new(atoms), &r);
        prop_assert_eq!(restrict(&Solution::new(once.clone()), &r), once);
    }

    #[test]
    fn compose_commutes_associates_and_restricts((n, a, b, c, _) in instance()) {
        let (k1, k2, k3) = (build(n, &a), build(n, &b), build(n, &c));
        let s = |k: &ClauseSet| brute_force_solutions(k).unwrap();
        let k12 = compose(&k1, &k2).unwrap();
        prop_assert_eq!(s(&k12), s(&compose(&k2, &k1).unwrap()));
        prop_assert_eq!(
            s(&compose(&k12, &k3).unwrap()),
            s(&compose(&k1, &compose(&k2, &k3).unwrap()).unwrap())
        );
        prop_assert!(s(&k12).is_subset(&s(&k1)));
        let meet: BTreeSet<Solution> = s(&k1).intersection(&s(&k2)).cloned().collect();
        prop_assert_eq!(s(&k12), meet);
    }

    #[test]
    fn cardinality_optima_are_subset_optima((n, a, _, _, mask) in instance()) {
        let k = build(n, &a);
        let r = relevant(&mask);
        let f = |c| brute_force_setmax(&k, &r, c).unwrap();
        prop_assert!(f(Criterion::Cardmax).is_subset(&f(Criterion::Setmax)));
        prop_assert!(f(Criterion::Cardmin).is_subset(&f(Criterion::Setmin)));
    }

    #[test]
    fn subset_optima_form_antichains((n, a, _, _, mask) in instance()) {
        let k = build(n, &a);
        let r = relevant(&mask);
        for c in [Criterion::Setmax, Criterion::Setmin] {
            let res = brute_force_setmax(&k, &r, c).unwrap();
            for p in &res {
                for q in &res {
                    prop_assert!(p == q || !p.is_subset(q));
                }
            }
        }
    }
}

#[test]
fn tautologies_and_duplicates_do_not_change_solutions() {
    let plain = build(3, &[vec![1, 2], vec![-3]]);
    let noisy = build(3, &[vec![2, 1], vec![1, -1, 3], vec![-3], vec![1, 2]]);
    assert_eq!(noisy.len(), 2);
    assert_eq!(brute_force_solutions(&plain).unwrap(), brute_force_solutions(&noisy).unwrap());
}
