//! Weak monoids, weak *-monoids and cyclic weak *-monoids in the category of
//! relations.

use crate::atom::Atom;
use crate::finrel::{Carrier, Rel, RelError};
use crate::report::Report;

#[derive(Debug, Clone, thiserror::Error)]
pub enum MonoidError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("{what} must be a relation {expected}, got {src} ↛ {dst}")]
    Shape {
        what: &'static str,
        expected: &'static str,
        src: String,
        dst: String,
    },
}

fn is_square_of(c: &Carrier, x: &Carrier) -> bool {
    matches!(c.factors(), Some((a, b)) if a == x && b == x)
}

fn shape_err(what: &'static str, expected: &'static str, r: &Rel) -> MonoidError {
    MonoidError::Shape {
        what,
        expected,
        src: r.src().to_string(),
        dst: r.dst().to_string(),
    }
}

fn check_l3(x: &Carrier, l3: &Rel, what: &'static str) -> Result<(), MonoidError> {
    if is_square_of(l3.src(), x) && l3.dst() == x {
        Ok(())
    } else {
        Err(shape_err(what, "X×X ↛ X", l3))
    }
}

#[derive(Debug, Clone)]
pub struct WeakMonoidCandidate {
    pub x: Carrier,
    /// `pt ↛ X`
    pub l1: Rel,
    /// `X×X ↛ X`
    pub l3: Rel,
}

impl WeakMonoidCandidate {
    pub fn new(x: &Carrier, l1: Rel, l3: Rel) -> Result<Self, MonoidError> {
        if l1.src() != &Carrier::point() || l1.dst() != x {
            return Err(shape_err("L1", "pt ↛ X", &l1));
        }
        check_l3(x, &l3, "L3")?;
        Ok(WeakMonoidCandidate { x: x.clone(), l1, l3 })
    }
}

#[derive(Debug, Clone)]
pub struct WeakMonoidCheck {
    pub report: Report,
    /// `L3∘(L1×Id)` read as an endorelation of `X`.
    pub l2: Rel,
}

/// Associativity of `L3`, equality of the two unitors, idempotence of `L2`.
pub fn check_weak_monoid(c: &WeakMonoidCandidate) -> Result<WeakMonoidCheck, MonoidError> {
    let x = &c.x;
    let id = Rel::identity(x);
    let mut report = Report::new();

    let lhs = c.l3.product(&id).then(&c.l3)?;
    let rhs = Rel::associator(x, x, x).then(&id.product(&c.l3))?.then(&c.l3)?;
    report.check("associativity", lhs == rhs, || {
        format!(
            "L3∘(L3×Id) ≠ L3∘(Id×L3)∘α: {}",
            lhs.difference_witness(&rhs).unwrap_or_default()
        )
    });

    let left = Rel::left_unitor(x).then(&c.l1.product(&id))?.then(&c.l3)?;
    let right = Rel::right_unitor(x).then(&id.product(&c.l1))?.then(&c.l3)?;
    report.check("unitors", left == right, || {
        format!(
            "L3∘(L1×Id) ≠ L3∘(Id×L1): {}",
            left.difference_witness(&right).unwrap_or_default()
        )
    });

    let l2 = left;
    let l2l2 = l2.then(&l2)?;
    report.check("L2∘L2=L2", l2l2 == l2, || {
        format!("L2∘L2={} but L2={}", l2l2, l2)
    });
    Ok(WeakMonoidCheck { report, l2 })
}

/// Graph of a self-map given by positions.
fn graph(x: &Carrier, psi: &[usize]) -> Rel {
    Rel::graph_of_indices(x, x, psi)
}

fn check_psi(x: &Carrier, psi: &[usize]) -> Result<(), MonoidError> {
    if psi.len() != x.len() || psi.iter().any(|&p| p >= x.len()) {
        return Err(MonoidError::Shape {
            what: "psi",
            expected: "a total map X → X",
            src: x.to_string(),
            dst: x.to_string(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct StarMonoidCandidate {
    pub x: Carrier,
    pub l3: Rel,
    /// `psi[i]` is the position of `ψ(x_i)`.
    pub psi: Vec<usize>,
}

impl StarMonoidCandidate {
    pub fn new(x: &Carrier, l3: Rel, psi: Vec<usize>) -> Result<Self, MonoidError> {
        check_l3(x, &l3, "L3")?;
        check_psi(x, &psi)?;
        Ok(StarMonoidCandidate { x: x.clone(), l3, psi })
    }

    /// `ψ_R = {(*, (x, ψx))}`.
    pub fn psi_r(&self) -> Rel {
        let xx = self.x.product(&self.x);
        Rel::from_index_pairs(
            &Carrier::point(),
            &xx,
            self.psi.iter().enumerate().map(|(i, &p)| (0, xx.pair_index(i, p))),
        )
    }
}

/// Involutivity of `ψ` (bijective, self-inverse, self-transpose graph),
/// then the weak monoid `(X, L3∘ψ_R, L3)`.
pub fn check_weak_star_monoid(c: &StarMonoidCandidate) -> Result<(Report, WeakMonoidCheck), MonoidError> {
    let x = &c.x;
    let g = graph(x, &c.psi);
    let gd = g.dagger();
    let id = Rel::identity(x);
    let mut report = Report::new();
    let self_inverse = gd.then(&g)? == id && g.then(&g)? == id;
    let self_transpose = gd == g;
    report.check("involutivity", self_inverse && self_transpose, || {
        let bad = (0..x.len()).find(|&i| c.psi[c.psi[i]] != i).unwrap_or(0);
        format!(
            "ψ(ψ({})) = {}",
            x.atom(bad),
            x.atom(c.psi[c.psi[bad]])
        )
    });
    let l1 = c.psi_r().then(&c.l3)?;
    report.note(format!("L1 = {l1}"));
    let weak = check_weak_monoid(&WeakMonoidCandidate::new(x, l1, c.l3.clone())?)?;
    report.merge(weak.report.clone());
    Ok((report, weak))
}

#[derive(Debug, Clone)]
pub struct CyclicCandidate {
    pub x: Carrier,
    pub psi: Vec<usize>,
    /// `X×X ↛ X`
    pub l: Rel,
}

impl CyclicCandidate {
    pub fn new(x: &Carrier, psi: Vec<usize>, l: Rel) -> Result<Self, MonoidError> {
        check_l3(x, &l, "L")?;
        check_psi(x, &psi)?;
        Ok(CyclicCandidate { x: x.clone(), psi, l })
    }

    /// `L_R ⊆ X³` as position triples `(a, b, c)` with `((a,b),c) ∈ L`.
    pub fn l_r(&self) -> Vec<(usize, usize, usize)> {
        let n = self.x.len();
        self.l.index_pairs().map(|(p, c)| (p / n, p % n, c)).collect()
    }
}

/// Invariance of `L_R` under `(a,b,c) ↦ (c,a,b)`, then the weak *-monoid
/// `(X, ψ†∘L, ψ)`.
pub fn check_cyclic_weak_star_monoid(c: &CyclicCandidate) -> Result<Report, MonoidError> {
    let x = &c.x;
    let n = x.len();
    let lr = c.l_r();
    let mut report = Report::new();
    let member = |a: usize, b: usize, cc: usize| c.l.contains_idx(a * n + b, cc);
    let broken = lr.iter().find(|&&(a, b, cc)| !member(cc, a, b));
    report.check("cyclicity", broken.is_none(), || {
        let &(a, b, cc) = broken.unwrap();
        format!(
            "({},{},{}) ∈ L_R but ({},{},{}) ∉ L_R",
            x.atom(a),
            x.atom(b),
            x.atom(cc),
            x.atom(cc),
            x.atom(a),
            x.atom(b)
        )
    });
    let l3 = c.l.then(&graph(x, &c.psi).dagger())?;
    let (star, _) = check_weak_star_monoid(&StarMonoidCandidate::new(x, l3, c.psi.clone())?)?;
    report.merge(star);
    Ok(report)
}

/// Readings of a weak unit given by a special element `p` with `pp = 1` in a
/// commutative monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PUnitReading {
    /// `L1 = {p}`
    Singleton,
    /// `L1 = {1, p}`
    WithIdentity,
}

pub fn p_unit_candidate(
    x: &Carrier,
    l3: Rel,
    one: &Atom,
    p: &Atom,
    reading: PUnitReading,
) -> Result<WeakMonoidCandidate, MonoidError> {
    let mut members = vec![x.require(p)?];
    if reading == PUnitReading::WithIdentity {
        members.push(x.require(one)?);
    }
    members.sort_unstable();
    members.dedup();
    WeakMonoidCandidate::new(x, Rel::subset(x, &members), l3)
}

/// `X×X ↛ X` from a binary operation on positions.
pub fn table_relation(x: &Carrier, op: impl Fn(usize, usize) -> usize) -> Rel {
    let n = x.len();
    let xx = x.product(x);
    Rel::from_index_pairs(&xx, x, (0..n * n).map(|p| (p, op(p / n, p % n))))
}
