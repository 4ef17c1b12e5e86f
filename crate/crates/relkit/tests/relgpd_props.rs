use proptest::prelude::*;

use relkit::finrel::{Budget, Carrier};
use relkit::frobenius::small_groupoids;
use relkit::relgpd::{
    build_example, check_core_axioms, check_regularity, reduce_to_groupoid, Example, RelGroupoidCandidate, SetCandidate,
};

const LAWS: [&str; 6] = ["A.1", "A.2", "A.3", "A.4", "A.5", "A.6"];

/// A candidate on `{0..n-1}` with a random ternary relation and a random
/// involution built from disjoint transpositions.
fn candidate() -> impl Strategy<Value = (usize, Vec<(usize, usize, usize)>, Vec<usize>)> {
    (1..=3usize).prop_flat_map(|n| {
        let triples = proptest::collection::vec((0..n, 0..n, 0..n), 0..=n * n * n);
        (Just(n), triples, any::<bool>())
    })
    .prop_map(|(n, triples, swap)| {
        let mut inv: Vec<usize> = (0..n).collect();
        if swap && n >= 2 {
            inv.swap(0, 1);
        }
        (n, triples, inv)
    })
}

fn build(n: usize, triples: &[(usize, usize, usize)], inv: &[usize], perm: &[usize]) -> RelGroupoidCandidate {
    let g = Carrier::range(n);
    let moved = triples.iter().map(|&(a, b, c)| (perm[a], perm[b], perm[c]));
    let mut pinv = vec![0; n];
    for x in 0..n {
        pinv[perm[x]] = perm[inv[x]];
    }
    RelGroupoidCandidate::Set(SetCandidate::from_indices(&g, moved, pinv))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verdicts_are_invariant_under_relabelling((n, triples, inv) in candidate(), rot in 0usize..3) {
        let id: Vec<usize> = (0..n).collect();
        let perm: Vec<usize> = (0..n).map(|x| (x + rot) % n).collect();
        let a = check_core_axioms(&build(n, &triples, &inv, &id), &Budget::default()).unwrap();
        let b = check_core_axioms(&build(n, &triples, &inv, &perm), &Budget::default()).unwrap();
        for law in LAWS {
            prop_assert_eq!(a.holds(law), b.holds(law), "{}", law);
        }
    }

    #[test]
    fn opposite_is_involutive((n, triples, inv) in candidate()) {
        let id: Vec<usize> = (0..n).collect();
        let c = build(n, &triples, &inv, &id);
        prop_assert_eq!(c.opposite().opposite(), c);
    }
}

#[test]
fn groupoid_candidates_pass_and_reduce_back() {
    let b = Budget::default();
    for (name, g) in small_groupoids(4) {
        if g.arrows().is_empty() {
            continue;
        }
        let c = build_example(Example::FromGroupoid(g.clone())).unwrap();
        let core = check_core_axioms(&c, &b).unwrap();
        assert!(core.verdict(), "{name}: {}", core.failed_laws());
        let reg = check_regularity(&c, &b).unwrap();
        assert!(reg.report().verdict(), "{name}: {}", reg.report().failed_laws());
        assert_eq!(reduce_to_groupoid(&c, &b).unwrap(), g.relabel_objects_by_units(), "{name}");
    }
}

#[test]
fn counterexample_fails_for_every_small_modulus() {
    for k in 3..=7 {
        let c = build_example(Example::CyclicCounterexample(k)).unwrap();
        let r = check_core_axioms(&c, &Budget::default()).unwrap();
        assert_eq!(r.holds("A.1"), Some(true), "k={k}");
        assert_eq!(r.holds("A.5"), Some(false), "k={k}");
    }
}
