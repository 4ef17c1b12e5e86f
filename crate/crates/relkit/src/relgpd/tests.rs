use super::*;
use crate::symplin::matrix::q;

fn b() -> Budget {
    Budget::default()
}

fn set(c: &RelGroupoidCandidate) -> &SetCandidate {
    match c {
        RelGroupoidCandidate::Set(s) => s,
        _ => panic!("set mode expected"),
    }
}

fn set_derived(c: &RelGroupoidCandidate) -> Derived<Rel> {
    match derive(c, &b()).unwrap() {
        DerivedData::Set(d) => d,
        _ => panic!("set mode expected"),
    }
}

fn zk_rel(k: usize, f: impl Fn(usize) -> usize) -> Rel {
    let g = Carrier::range(k);
    Rel::graph_of_indices(&g, &g, &(0..k).map(f).collect::<Vec<_>>())
}

#[test]
fn counterexample_mod_five_derived_sets() {
    let c = build_example(Example::CyclicCounterexample(5)).unwrap();
    let d = set_derived(&c);
    assert_eq!(d.l1.members(), vec![1]);
    assert_eq!(d.l2, zk_rel(5, |m| (m + 2) % 5));
    let g = Carrier::range(5);
    let gg = g.product(&g);
    let l3 = Rel::from_index_pairs(&gg, &g, (0..25).map(|k| (k, (k / 5 + k % 5 + 1) % 5)));
    assert_eq!(d.l3, l3);
}

#[test]
fn counterexample_mod_five_failures() {
    let c = build_example(Example::CyclicCounterexample(5)).unwrap();
    let r = check_core_axioms(&c, &b()).unwrap();
    assert_eq!(r.holds("A.1"), Some(true));
    assert_eq!(r.holds("A.2"), Some(true));
    // (n,m,−n−m−1) ↦ (−m,−n,n+m+1) sums to 1, not −1
    assert_eq!(r.holds("A.3"), Some(false));
    assert_eq!(r.holds("A.4"), Some(true));
    assert_eq!(r.holds("A.5"), Some(false));
    let a5: Vec<_> = r.witnesses_for("A.5").map(|w| w.detail.clone()).collect();
    assert_eq!(a5, vec!["L3∘(L1×L1)={3} ≠ L1={1}".to_string()]);
    let a6: Vec<_> = r.witnesses_for("A.6").map(|w| w.detail.clone()).collect();
    assert!(a6.iter().any(|w| w == "L2∘L1={3} ≠ L1={1}"));
    assert!(a6.iter().any(|w| w.starts_with("L2∘L3=")));
    assert!(a6.iter().any(|w| w.starts_with("L2∘L2={(0,4),")));
    assert!(a6.iter().any(|w| w.starts_with("I∘L2={(0,3),(1,2),")));

    let d = set_derived(&c);
    let il2 = d.l2.then(&d.i_endo).unwrap();
    let l2i = d.i_endo.then(&d.l2).unwrap();
    assert_eq!(il2, zk_rel(5, |m| (10 - m - 2) % 5));
    assert_eq!(l2i, zk_rel(5, |m| (10 - m + 2) % 5));
}

#[test]
fn small_k_rejected() {
    assert!(matches!(
        build_example(Example::CyclicCounterexample(2)),
        Err(RelGpdError::Param(_))
    ));
    assert!(build_example(Example::CyclicCounterexample(3)).is_ok());
    assert!(build_example(Example::Parity(7)).is_err());
}

#[test]
fn parity_on_z8() {
    let c = build_example(Example::Parity(8)).unwrap();
    let core = check_core_axioms(&c, &b()).unwrap();
    assert!(core.verdict(), "{core:?}");
    let reg = match check_regularity(&c, &b()).unwrap() {
        Regularity::Set(r) => r,
        _ => unreachable!(),
    };
    assert!(reg.report.verdict(), "{:?}", reg.report);
    assert_eq!(reg.m_classes.len(), 1);
    assert_eq!(reg.c.len(), 8);
    assert_eq!(reg.c_classes.len(), 2);
    let g = reduce_to_groupoid(&c, &b()).unwrap();
    assert_eq!(g.objects().len(), 1);
    assert_eq!(g.arrows().len(), 2);
    let z2 = Groupoid::group(&Carrier::range(2), 1, |a, b| (a + b + 1) % 2, |a| a);
    assert_eq!(g.relabel_objects_by_units(), z2.relabel_objects_by_units());
}

#[test]
fn non_involution_is_an_error() {
    let g = Carrier::range(3);
    let c = RelGroupoidCandidate::Set(SetCandidate::from_indices(&g, [(0, 0, 0)], vec![1, 2, 0]));
    assert!(matches!(derive(&c, &b()), Err(RelGpdError::NotInvolution(_))));
    let r = check_core_axioms(&c, &b()).unwrap();
    assert_eq!(r.holds("A.2"), Some(false));
}

#[test]
fn pair_groupoid_round_trip() {
    let objs = Carrier::new(["a", "b"].map(Atom::name)).unwrap();
    let gp = Groupoid::pair(&objs);
    let c = build_example(Example::FromGroupoid(gp.clone())).unwrap();
    let d = set_derived(&c);
    let units: Vec<usize> = (0..2).map(|x| gp.unit(x)).collect();
    assert_eq!(d.l1.members(), units);
    assert_eq!(d.l2, Rel::identity(gp.arrows()));
    assert_eq!(d.l3.len(), 8);
    assert!(check_core_axioms(&c, &b()).unwrap().verdict());
    let reg = check_regularity(&c, &b()).unwrap();
    assert!(reg.report().verdict());
    if let Regularity::Set(r) = &reg {
        assert_eq!(r.c.len(), 4);
        assert_eq!(r.m_classes.len(), 2);
    }
    let back = reduce_to_groupoid(&c, &b()).unwrap();
    assert_eq!(back, gp.relabel_objects_by_units());
}

#[test]
fn cyclic_three_passes_everything() {
    let c = build_example(Example::FromGroupoid(Groupoid::cyclic(3))).unwrap();
    assert!(check_core_axioms(&c, &b()).unwrap().verdict());
    assert!(check_regularity(&c, &b()).unwrap().report().verdict());
    assert_eq!(
        reduce_to_groupoid(&c, &b()).unwrap(),
        Groupoid::cyclic(3).relabel_objects_by_units()
    );
}

#[test]
fn lagrangian_triple_set_reduces_to_a_point() {
    let g = Carrier::range(4);
    let c = build_example(Example::LagrangianTripleSet {
        carrier: g.clone(),
        inv: vec![1, 0, 3, 2],
        lagrangian: vec![0, 1],
    })
    .unwrap();
    let d = set_derived(&c);
    assert_eq!(d.l1.members(), vec![0, 1]);
    assert_eq!(d.l2.len(), 4);
    assert_eq!(d.l3.len(), 8);
    assert!(check_core_axioms(&c, &b()).unwrap().verdict());
    let gpd = reduce_to_groupoid(&c, &b()).unwrap();
    assert_eq!((gpd.objects().len(), gpd.arrows().len()), (1, 1));
    let bad = build_example(Example::LagrangianTripleSet {
        carrier: g,
        inv: vec![2, 3, 0, 1],
        lagrangian: vec![0, 1],
    });
    assert!(bad.is_err());
}

#[test]
fn linear_lagrangian_triple() {
    let v = SympSpace::standard(1);
    let phi = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
    let l = Subspace::span(2, &[vec![q(1), q(0)]]);
    let c = build_example(Example::LagrangianTriple {
        space: v.clone(),
        phi: phi.clone(),
        lagrangian: l.clone(),
    })
    .unwrap();
    let d = match derive(&c, &b()).unwrap() {
        DerivedData::Linear(d) => d,
        _ => unreachable!(),
    };
    assert_eq!(d.l1.space, l);
    assert_eq!(d.l2.space.dim(), 2);
    assert_eq!(d.l3.space.dim(), 3);
    assert!(d.lagrangian.iter().all(|(_, ok)| *ok), "{:?}", d.lagrangian);
    let r = check_core_axioms(&c, &b()).unwrap();
    assert!(r.verdict(), "{r:?}");
    let reg = check_regularity(&c, &b()).unwrap();
    match reg {
        Regularity::Linear(r) => {
            assert_eq!(r.m_dim, 0);
            assert_eq!(r.c, l);
        }
        _ => unreachable!(),
    }
    let moved = Subspace::span(2, &[vec![q(0), q(1)]]);
    let bad = build_example(Example::LagrangianTriple {
        space: v,
        phi: Matrix::from_i64(&[&[0, 1], &[1, 0]]),
        lagrangian: moved,
    });
    assert!(bad.is_err());
}

#[test]
fn linear_pair_groupoid_is_lagrangian_throughout() {
    for n in 1..=2 {
        let c = build_example(Example::LinearPairGroupoid(SympSpace::standard(n))).unwrap();
        let r = check_core_axioms(&c, &b()).unwrap();
        assert!(r.verdict(), "{r:?}");
        let reg = check_regularity(&c, &b()).unwrap();
        assert!(reg.report().verdict(), "{:?}", reg.report());
        if let Regularity::Linear(r) = reg {
            assert_eq!(r.m_dim, 2 * n);
        }
    }
}

#[test]
fn equivalences_and_morphisms() {
    let objs = Carrier::new(["a", "b"].map(Atom::name)).unwrap();
    let c = build_example(Example::FromGroupoid(Groupoid::pair(&objs))).unwrap();
    let s = set(&c);
    let d = set_derived(&c);
    let l2 = GpdRelation::Set(d.l2.clone());
    let r = check_morphism(&l2, &c, &c, MorphismKind::Equivalence, &b()).unwrap();
    assert!(r.verdict(), "{r:?}");

    let op = c.opposite();
    let i = GpdRelation::Set(s.i_rel());
    let r = check_morphism(&i, &c, &op, MorphismKind::Equivalence, &b()).unwrap();
    assert!(r.verdict(), "{r:?}");

    let sq = build_example(Example::Power(Box::new(c.clone()), 2)).unwrap();
    assert!(check_core_axioms(&sq, &b()).unwrap().verdict());
    let diag = diagonal_into_power(&c, 2);
    let r = check_morphism(&diag, &c, &sq, MorphismKind::Morphism, &b()).unwrap();
    assert!(r.verdict(), "{r:?}");
    let r = check_morphism(&diag, &c, &sq, MorphismKind::Equivalence, &b()).unwrap();
    assert!(!r.verdict());
}

#[test]
fn parity_l2_is_a_self_equivalence() {
    let c = build_example(Example::Parity(4)).unwrap();
    let d = set_derived(&c);
    let r = check_morphism(&GpdRelation::Set(d.l2), &c, &c, MorphismKind::Equivalence, &b()).unwrap();
    assert!(r.verdict(), "{r:?}");
}

#[test]
fn linear_morphisms() {
    let c = build_example(Example::LinearPairGroupoid(SympSpace::standard(1))).unwrap();
    let d = match derive(&c, &b()).unwrap() {
        DerivedData::Linear(d) => d,
        _ => unreachable!(),
    };
    let r = check_morphism(&GpdRelation::Linear(d.l2), &c, &c, MorphismKind::Equivalence, &b()).unwrap();
    assert!(r.verdict(), "{r:?}");
    let sq = build_example(Example::Power(Box::new(c.clone()), 2)).unwrap();
    assert!(check_core_axioms(&sq, &b()).unwrap().verdict());
    let diag = diagonal_into_power(&c, 2);
    let r = check_morphism(&diag, &c, &sq, MorphismKind::Morphism, &b()).unwrap();
    assert!(r.holds("I").unwrap() && r.holds("L").unwrap(), "{r:?}");
}

#[test]
fn budget_is_enforced() {
    let c = build_example(Example::Parity(8)).unwrap();
    assert!(matches!(
        check_core_axioms(&c, &Budget::new(100)),
        Err(RelGpdError::Rel(RelError::BudgetExceeded { .. }))
    ));
}
