use proptest::prelude::*;

use relkit::finrel::{classify_relation, Carrier, Rel};

fn rel_on(src: &Carrier, dst: &Carrier, bits: &[bool]) -> Rel {
    let m = dst.len();
    let pairs = bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| (k / m, k % m));
    Rel::from_index_pairs(src, dst, pairs)
}

fn bits(n: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), n)
}

/// Three composable relations `A ↛ B ↛ C ↛ D` with carriers of size ≤ 4.
fn chain() -> impl Strategy<Value = (Rel, Rel, Rel)> {
    (0..=4usize, 0..=4usize, 0..=4usize, 0..=4usize).prop_flat_map(|(a, b, c, d)| {
        (bits(a * b), bits(b * c), bits(c * d)).prop_map(move |(r, s, t)| {
            let ca = Carrier::range(a);
            let cb = Carrier::new((0..b as i64).map(|i| relkit::Atom::Int(i + 10))).unwrap();
            let cc = Carrier::new((0..c as i64).map(|i| relkit::Atom::Int(i + 20))).unwrap();
            let cd = Carrier::new((0..d as i64).map(|i| relkit::Atom::Int(i + 30))).unwrap();
            (rel_on(&ca, &cb, &r), rel_on(&cb, &cc, &s), rel_on(&cc, &cd, &t))
        })
    })
}

fn endo() -> impl Strategy<Value = Rel> {
    (0..=5usize).prop_flat_map(|n| {
        bits(n * n).prop_map(move |b| {
            let c = Carrier::range(n);
            rel_on(&c, &c, &b)
        })
    })
}

/// `(x, z) ∈ s∘r` by brute force over the middle carrier.
fn brute_compose(r: &Rel, s: &Rel) -> Rel {
    let mut out = Rel::empty(r.src(), s.dst());
    for x in 0..r.src().len() {
        for y in 0..r.dst().len() {
            for z in 0..s.dst().len() {
                if r.contains_idx(x, y) && s.contains_idx(y, z) {
                    out.insert(x, z);
                }
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn composition_matches_brute_force((r, s, _) in chain()) {
        prop_assert_eq!(r.then(&s).unwrap(), brute_compose(&r, &s));
    }

    #[test]
    fn composition_is_associative((r, s, t) in chain()) {
        let left = r.then(&s).unwrap().then(&t).unwrap();
        let right = r.then(&s.then(&t).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_neutral((r, _, _) in chain()) {
        prop_assert_eq!(Rel::identity(r.src()).then(&r).unwrap(), r.clone());
        prop_assert_eq!(r.then(&Rel::identity(r.dst())).unwrap(), r);
    }

    #[test]
    fn dagger_laws((r, s, _) in chain()) {
        prop_assert_eq!(r.dagger().dagger(), r.clone());
        prop_assert_eq!(r.then(&s).unwrap().dagger(), s.dagger().then(&r.dagger()).unwrap());
        prop_assert_eq!(Rel::identity(r.src()).dagger(), Rel::identity(r.src()));
    }

    #[test]
    fn product_is_functorial((r1, s1, _) in chain(), (r2, s2, _) in chain()) {
        let left = r1.product(&r2).then(&s1.product(&s2)).unwrap();
        let right = r1.then(&s1).unwrap().product(&r2.then(&s2).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn classification_matches_brute_force(r in endo()) {
        let n = r.src().len();
        let c = classify_relation(&r).unwrap();
        let has = |i, j| r.contains_idx(i, j);
        let reflexive = (0..n).all(|i| has(i, i));
        let symmetric = (0..n).all(|i| (0..n).all(|j| has(i, j) == has(j, i)));
        let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(has(i, j) && has(j, k)) || has(i, k))));
        let function = (0..n).all(|i| (0..n).filter(|&j| has(i, j)).count() == 1);
        let rr = brute_compose(&r, &r);
        prop_assert_eq!(c.is_reflexive, reflexive);
        prop_assert_eq!(c.is_symmetric, symmetric);
        prop_assert_eq!(c.is_transitive, transitive);
        prop_assert_eq!(c.is_function, function);
        prop_assert_eq!(c.is_equivalence, reflexive && symmetric && transitive);
        prop_assert_eq!(c.is_idempotent, rr == r);
    }

    #[test]
    fn swap_is_an_involution(a in 0..=4usize, b in 0..=4usize) {
        let (ca, cb) = (Carrier::range(a), Carrier::new((0..b as i64).map(|i| relkit::Atom::Int(i + 10))).unwrap());
        let sw = Rel::swap(&ca, &cb).then(&Rel::swap(&cb, &ca)).unwrap();
        prop_assert_eq!(sw, Rel::identity(&ca.product(&cb)));
    }
}
