use relkit::doc::{self, parse_document, print_document, DocError, Document};
use relkit::finrel::{Carrier, Rel};
use relkit::frobenius::{from_groupoid, Groupoid};
use relkit::hstar::Semigroupoid;
use relkit::poisson::{PolyBivector, PolyFunction};
use relkit::relgpd::{build_example, Example};
use relkit::symplin::{q, q2, LinRelation, Matrix, Subspace, SympSpace};

fn z3_triples(f: impl Fn(usize, usize) -> usize) -> Vec<(String, String, String)> {
    (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .map(|(a, b)| (a.to_string(), b.to_string(), f(a, b).to_string()))
        .collect()
}

fn atoms(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn one_of_each() -> Vec<Document> {
    let z3 = Groupoid::cyclic(3);
    let ab = Carrier::new(["a", "b"]).unwrap();
    let v = SympSpace::standard(1);
    let shear = Matrix::from_i64(&[&[1, 3], &[0, 1]]);
    let x = |i| PolyFunction::var(3, i);
    let so3 = PolyBivector::from_upper_entries(3, &[((0, 1), x(2)), ((1, 2), x(0)), ((0, 2), x(1).scale(&q(-1)))]).unwrap();
    let inv: std::collections::BTreeMap<String, String> =
        (0..3).map(|a| (a.to_string(), ((3 - a) % 3).to_string())).collect();
    vec![
        doc::relation_doc(&Rel::swap(&ab, &ab)),
        doc::frobenius_doc(&from_groupoid(&z3).unwrap()),
        doc::hstar_doc(&from_groupoid(&Groupoid::pair(&ab)).unwrap()),
        doc::groupoid_doc(&Groupoid::pair(&ab)),
        doc::semigroupoid_doc(&Semigroupoid::from_groupoid(&z3)),
        Document::WeakMonoid(doc::WeakMonoidDoc {
            carrier: atoms(3),
            l1: vec!["0".into()],
            l3: z3_triples(|a, b| (a + b) % 3),
        }),
        Document::StarMonoid(doc::StarMonoidDoc {
            carrier: atoms(3),
            l3: z3_triples(|a, b| (a + b) % 3),
            psi: inv.clone(),
        }),
        Document::CyclicMonoid(doc::CyclicMonoidDoc {
            carrier: atoms(3),
            psi: inv,
            l: z3_triples(|a, b| (6 - a - b) % 3),
        }),
        doc::symp_space_doc(&SympSpace::new(Matrix::from_i64(&[&[0, 2], &[-2, 0]])).unwrap()),
        doc::subspace_doc(Some(&v), &Subspace::span(2, &[vec![q2(1, 2), q(-3)]])),
        doc::subspace_doc(None, &Subspace::span(4, &[vec![q(1), q(0), q(0), q(1)]])),
        doc::linrel_doc(&LinRelation::graph(&v, &v, &shear).unwrap()),
        doc::relgpd_doc(&build_example(Example::Parity(4)).unwrap()),
        doc::relgpd_doc(&build_example(Example::LinearPairGroupoid(v.clone())).unwrap()),
        doc::bivector_doc(&so3, Some(&x(0).mul(&x(1))), Some(&PolyFunction::constant(3, q2(-7, 3)))),
        doc::lie_constants_doc(&so3.structure_constants().unwrap()),
    ]
}

#[test]
fn every_kind_round_trips() {
    let docs = one_of_each();
    let mut kinds: Vec<&str> = docs.iter().map(Document::kind).collect();
    kinds.sort();
    kinds.dedup();
    assert_eq!(kinds.len(), 14);
    for d in docs {
        let text = print_document(&d);
        let back = parse_document(&text).unwrap_or_else(|e| panic!("{}: {e}", d.kind()));
        assert_eq!(back, d, "{}", d.kind());
        assert_eq!(print_document(&back), text);
    }
}

#[test]
fn structures_survive_the_trip() {
    let c = build_example(Example::CyclicCounterexample(5)).unwrap();
    let Document::Relgpd(d) = parse_document(&print_document(&doc::relgpd_doc(&c))).unwrap() else {
        panic!("wrong kind");
    };
    assert_eq!(doc::relgpd(&d).unwrap().0, c);

    let g = Groupoid::klein();
    let Document::Groupoid(d) = parse_document(&print_document(&doc::groupoid_doc(&g))).unwrap() else {
        panic!("wrong kind");
    };
    assert_eq!(doc::groupoid(&d).unwrap(), g);
}

#[test]
fn schema_errors_name_the_field() {
    let cases = [
        (r#"{"kind":"frobenius","carrier":["0"],"triples":[["0","0","1"]]}"#, "triples"),
        (r#"{"kind":"symp-space","omega":[["0","1"],["1","0"]]}"#, "omega"),
        (r#"{"kind":"symp-space","omega":[["0","1"],["-1","zero"]]}"#, "omega"),
        (r#"{"kind":"subspace","ambient":2,"basis":[["1"]]}"#, "basis"),
        (r#"{"kind":"star-monoid","carrier":["0","1"],"l3":[],"psi":{"0":"1"}}"#, "psi"),
        (r#"{"kind":"lie-constants","dim":1,"constants":[[["1"]]]}"#, "constants"),
        (r#"{"kind":"relgpd","mode":"set","carrier":["0"],"triples":[],"inverse":{}}"#, "inverse"),
    ];
    for (text, field) in cases {
        match parse_document(text) {
            Err(DocError::Schema { field: f, .. }) => assert_eq!(f, field, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn syntax_errors_report_positions() {
    match parse_document("{\"kind\": \"relation\",\n \"src\": [1,}") {
        Err(DocError::Syntax { line: 2, .. }) => {}
        other => panic!("{other:?}"),
    }
}
