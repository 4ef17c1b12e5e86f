//! Relational groupoids `(G, L, I)`: derived relations, axioms A.1–A.9,
//! reduction to an ordinary groupoid and morphisms.
//!
//! Two carriers are supported. In set mode `G` is a finite [`Carrier`], `L`
//! a set of triples and `I` a map. In linear mode `G` is a [`SympSpace`], `L`
//! a subspace of `G³` and `I` a matrix. The relation algebra used by the
//! axioms is shared through the [`Calculus`] trait.

mod examples;

pub use examples::{build_example, diagonal_into_power, power_carrier, Example};

use std::fmt;

use crate::finrel::{Budget, Carrier, Rel, RelError};
use crate::frobenius::{check_groupoid_axioms, FrobError, Groupoid};
use crate::report::Report;
use crate::symplin::matrix::{format_rational, q, Matrix};
use crate::symplin::{LinRelation, SympError, SympSpace, Subspace};
use crate::Atom;

#[derive(Debug, Clone, thiserror::Error)]
pub enum RelGpdError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Symp(#[from] SympError),
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error("I is not an involution: {0}")]
    NotInvolution(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("precondition failed: {}", .0.failed_laws())]
    Precondition(Box<Report>),
    #[error("projected multiplication is not single-valued: {0}")]
    NotSingleValued(String),
    #[error("reduction does not produce a groupoid: {}", .0.failed_laws())]
    InvalidReduction(Box<Report>),
    #[error("{0}")]
    Unsupported(String),
}

/// The relation algebra needed by the axioms: composition, products,
/// converse and a few structural relations.
pub trait Calculus: Clone + PartialEq + Sized {
    type Space: Clone + PartialEq + fmt::Debug;

    fn src(&self) -> &Self::Space;
    fn dst(&self) -> &Self::Space;
    /// `next ∘ self`.
    fn then(&self, next: &Self) -> Result<Self, RelGpdError>;
    fn times(&self, other: &Self) -> Self;
    fn dagger(&self) -> Self;
    fn identity(a: &Self::Space) -> Self;
    fn point() -> Self::Space;
    /// `A ↛ pt×A`.
    fn left_unitor(a: &Self::Space) -> Self;
    /// `A ↛ A×pt`.
    fn right_unitor(a: &Self::Space) -> Self;
    /// `pt ↛ A` relating the point to everything.
    fn everything(a: &Self::Space) -> Self;
    /// Same relation between the conjugate spaces.
    fn conj(&self) -> Self;
    /// Re-types the source as `like`'s source. Both must enumerate their
    /// elements in the same order (used for `(A×B)×C` against `A×(B×C)`).
    fn with_src_of(&self, like: &Self) -> Self;
    fn show(&self) -> String;
}

impl Calculus for Rel {
    type Space = Carrier;

    fn src(&self) -> &Carrier {
        Rel::src(self)
    }
    fn dst(&self) -> &Carrier {
        Rel::dst(self)
    }
    fn then(&self, next: &Rel) -> Result<Rel, RelGpdError> {
        Ok(Rel::then(self, next)?)
    }
    fn times(&self, other: &Rel) -> Rel {
        self.product(other)
    }
    fn dagger(&self) -> Rel {
        Rel::dagger(self)
    }
    fn identity(a: &Carrier) -> Rel {
        Rel::identity(a)
    }
    fn point() -> Carrier {
        Carrier::point()
    }
    fn left_unitor(a: &Carrier) -> Rel {
        Rel::left_unitor(a)
    }
    fn right_unitor(a: &Carrier) -> Rel {
        Rel::right_unitor(a)
    }
    fn everything(a: &Carrier) -> Rel {
        Rel::total(&Carrier::point(), a)
    }
    fn conj(&self) -> Rel {
        self.clone()
    }
    fn with_src_of(&self, like: &Rel) -> Rel {
        Rel::from_index_pairs(Rel::src(like), Rel::dst(self), self.index_pairs())
    }
    fn show(&self) -> String {
        self.to_string()
    }
}

/// `(A↛B)×(C↛D)` as a subspace of `(A⊕C)⊕(B⊕D)`.
pub fn lin_product(a: &LinRelation, b: &LinRelation) -> LinRelation {
    let (sa, da) = (a.src.dim(), a.dst.dim());
    let (sb, db) = (b.src.dim(), b.dst.dim());
    let zero = |k: usize| vec![q(0); k];
    let mut cols = Vec::new();
    for v in a.space.basis_vectors() {
        let mut c = v[..sa].to_vec();
        c.extend(zero(sb));
        c.extend_from_slice(&v[sa..]);
        c.extend(zero(db));
        cols.push(c);
    }
    for w in b.space.basis_vectors() {
        let mut c = zero(sa);
        c.extend_from_slice(&w[..sb]);
        c.extend(zero(da));
        c.extend_from_slice(&w[sb..]);
        cols.push(c);
    }
    let n = sa + sb + da + db;
    LinRelation::new(
        &a.src.direct_sum(&b.src),
        &a.dst.direct_sum(&b.dst),
        Subspace::span(n, &cols),
    )
    .expect("dimensions add up")
}

/// `span{v1,v2,…}` with exact rational entries.
pub fn show_subspace(s: &Subspace) -> String {
    let vs: Vec<String> = s
        .basis_vectors()
        .iter()
        .map(|v| {
            let entries: Vec<String> = v.iter().map(format_rational).collect();
            format!("({})", entries.join(","))
        })
        .collect();
    if vs.is_empty() {
        "{0}".to_string()
    } else {
        format!("span{{{}}}", vs.join(","))
    }
}

impl Calculus for LinRelation {
    type Space = SympSpace;

    fn src(&self) -> &SympSpace {
        &self.src
    }
    fn dst(&self) -> &SympSpace {
        &self.dst
    }
    fn then(&self, next: &LinRelation) -> Result<LinRelation, RelGpdError> {
        Ok(LinRelation::then(self, next)?)
    }
    fn times(&self, other: &LinRelation) -> LinRelation {
        lin_product(self, other)
    }
    fn dagger(&self) -> LinRelation {
        LinRelation::dagger(self)
    }
    fn identity(a: &SympSpace) -> LinRelation {
        LinRelation::identity(a)
    }
    fn point() -> SympSpace {
        SympSpace::standard(0)
    }
    fn left_unitor(a: &SympSpace) -> LinRelation {
        LinRelation::identity(a)
    }
    fn right_unitor(a: &SympSpace) -> LinRelation {
        LinRelation::identity(a)
    }
    fn everything(a: &SympSpace) -> LinRelation {
        LinRelation::new(&SympSpace::standard(0), a, Subspace::full(a.dim())).expect("dims")
    }
    fn conj(&self) -> LinRelation {
        LinRelation {
            src: self.src.conjugate(),
            dst: self.dst.conjugate(),
            space: self.space.clone(),
        }
    }
    fn with_src_of(&self, like: &LinRelation) -> LinRelation {
        LinRelation {
            src: like.src.clone(),
            ..self.clone()
        }
    }
    fn show(&self) -> String {
        show_subspace(&self.space)
    }
}

/// Set-mode data: `L ⊆ G³` stored as `L_rel : G×G ↛ G`, `I` as a table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetCandidate {
    g: Carrier,
    l: Rel,
    inv: Vec<usize>,
}

impl SetCandidate {
    pub fn new<L, M>(g: &Carrier, triples: L, inv: M) -> Result<SetCandidate, RelGpdError>
    where
        L: IntoIterator<Item = (Atom, Atom, Atom)>,
        M: IntoIterator<Item = (Atom, Atom)>,
    {
        let mut idx = Vec::new();
        for (x, y, z) in triples {
            idx.push((g.require(&x)?, g.require(&y)?, g.require(&z)?));
        }
        let map = Rel::graph(g, g, inv)?;
        let inv = map.as_function().expect("graph is a function");
        Ok(SetCandidate::from_indices(g, idx, inv))
    }

    /// Positions instead of atoms. Panics on out-of-range input.
    pub fn from_indices<L>(g: &Carrier, triples: L, inv: Vec<usize>) -> SetCandidate
    where
        L: IntoIterator<Item = (usize, usize, usize)>,
    {
        assert_eq!(inv.len(), g.len(), "I must be total");
        assert!(inv.iter().all(|&j| j < g.len()));
        let gg = g.product(g);
        let l = Rel::from_index_pairs(&gg, g, triples.into_iter().map(|(x, y, z)| (gg.pair_index(x, y), z)));
        SetCandidate {
            g: g.clone(),
            l,
            inv,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.g
    }

    /// `L_rel : G×G ↛ G`.
    pub fn l_rel(&self) -> &Rel {
        &self.l
    }

    pub fn inv(&self) -> &[usize] {
        &self.inv
    }

    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.l.contains_idx(self.l.src().pair_index(x, y), z)
    }

    pub fn index_triples(&self) -> Vec<(usize, usize, usize)> {
        self.l
            .index_pairs()
            .map(|(k, z)| {
                let (x, y) = self.l.src().split_index(k);
                (x, y, z)
            })
            .collect()
    }

    pub fn triples(&self) -> Vec<(Atom, Atom, Atom)> {
        let a = |i: usize| self.g.atom(i).clone();
        self.index_triples().into_iter().map(|(x, y, z)| (a(x), a(y), a(z))).collect()
    }

    pub fn i_rel(&self) -> Rel {
        Rel::graph_of_indices(&self.g, &self.g, &self.inv)
    }
}

/// Linear-mode data: `L ⊆ G³` and an antisymplectic `I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCandidate {
    g: SympSpace,
    l: Subspace,
    inv: Matrix,
}

impl LinearCandidate {
    pub fn new(g: &SympSpace, l: Subspace, inv: Matrix) -> Result<LinearCandidate, RelGpdError> {
        let d = g.dim();
        if l.ambient_dim() != 3 * d {
            return Err(SympError::DimensionMismatch {
                expected: 3 * d,
                got: l.ambient_dim(),
            }
            .into());
        }
        if inv.rows() != d || inv.cols() != d {
            return Err(RelGpdError::Param(format!("I must be a {d}×{d} matrix")));
        }
        if !inv.is_invertible() {
            return Err(RelGpdError::Param("I is not invertible".into()));
        }
        if inv.transpose().mul(g.omega()).mul(&inv) != g.omega().neg() {
            return Err(RelGpdError::Param("I is not antisymplectic".into()));
        }
        Ok(LinearCandidate {
            g: g.clone(),
            l,
            inv,
        })
    }

    pub fn space(&self) -> &SympSpace {
        &self.g
    }

    pub fn l(&self) -> &Subspace {
        &self.l
    }

    pub fn inv(&self) -> &Matrix {
        &self.inv
    }

    pub fn l_rel(&self) -> LinRelation {
        let gg = self.g.direct_sum(&self.g);
        LinRelation::new(&gg, &self.g.conjugate(), self.l.clone()).expect("checked dims")
    }

    /// `I` as a relation `Ḡ ↛ G`.
    pub fn i_rel(&self) -> LinRelation {
        LinRelation::graph(&self.g.conjugate(), &self.g, &self.inv).expect("square")
    }

    /// `I` as an endorelation of `G`.
    pub fn i_endo(&self) -> LinRelation {
        LinRelation::graph(&self.g, &self.g, &self.inv).expect("square")
    }

    /// `pt ↛ G×G`, `{(x, Ix)}`.
    pub fn l_i(&self) -> LinRelation {
        let d = self.g.dim();
        let cols = Matrix::identity(d).vstack(&self.inv);
        LinRelation::new(
            &SympSpace::standard(0),
            &self.g.direct_sum(&self.g),
            Subspace::from_columns(&cols),
        )
        .expect("dims")
    }

    /// Applies the block matrix `diag`-style map `(x,y,z) ↦ blocks` to `L`.
    fn transform(&self, blocks: [[Option<&Matrix>; 3]; 3]) -> Subspace {
        let d = self.g.dim();
        let mut big = Matrix::zeros(3 * d, 3 * d);
        let mut rows = big.to_rows();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, m) in row.iter().enumerate() {
                if let Some(m) = m {
                    for i in 0..d {
                        for j in 0..d {
                            rows[bi * d + i][bj * d + j] = m[(i, j)].clone();
                        }
                    }
                }
            }
        }
        big = Matrix::from_rows(rows);
        self.l.image(&big)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelGroupoidCandidate {
    Set(SetCandidate),
    Linear(LinearCandidate),
}

impl RelGroupoidCandidate {
    /// `L' = {(y,x,z) | (x,y,z) ∈ L}` with the same `I`; in linear mode on `Ḡ`.
    pub fn opposite(&self) -> RelGroupoidCandidate {
        match self {
            RelGroupoidCandidate::Set(c) => {
                let t = c.index_triples().into_iter().map(|(x, y, z)| (y, x, z));
                RelGroupoidCandidate::Set(SetCandidate::from_indices(&c.g, t, c.inv.clone()))
            }
            RelGroupoidCandidate::Linear(c) => {
                let id = Matrix::identity(c.g.dim());
                let l = c.transform([[None, Some(&id), None], [Some(&id), None, None], [None, None, Some(&id)]]);
                RelGroupoidCandidate::Linear(LinearCandidate {
                    g: c.g.conjugate(),
                    l,
                    inv: c.inv.clone(),
                })
            }
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, RelGroupoidCandidate::Linear(_))
    }
}

/// Derived relations of a candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct Derived<R> {
    pub l_rel: R,
    pub i_endo: R,
    pub l_i: R,
    pub l3: R,
    pub l1: R,
    /// `L3∘(L1×Id)`.
    pub l2: R,
    /// `L3∘(Id×L1)`.
    pub l2_right: R,
    pub c: R,
    /// Linear mode only: name and verdict of each Lagrangian condition.
    pub lagrangian: Vec<(String, bool)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivedData {
    Set(Derived<Rel>),
    Linear(Derived<LinRelation>),
}

fn derive_generic<R: Calculus>(g: &R::Space, l_rel: R, i_rel: &R, i_endo: R, l_i: R) -> Result<Derived<R>, RelGpdError> {
    let id = R::identity(g);
    let l3 = l_rel.then(i_rel)?;
    let l1 = l_i.then(&l3)?;
    let l2 = R::left_unitor(g).then(&l1.times(&id))?.then(&l3)?;
    let l2_right = R::right_unitor(g).then(&id.times(&l1))?.then(&l3)?;
    let c = R::everything(g).then(&l2)?;
    Ok(Derived {
        l_rel,
        i_endo,
        l_i,
        l3,
        l1,
        l2,
        l2_right,
        c,
        lagrangian: Vec::new(),
    })
}

fn set_budget(c: &SetCandidate, budget: &Budget) -> Result<(), RelGpdError> {
    let n = c.g.len() as u128;
    Ok(budget.ensure("relational groupoid", n.pow(4))?)
}

fn involution_defect_set(c: &SetCandidate) -> Option<String> {
    (0..c.g.len()).find(|&x| c.inv[c.inv[x]] != x).map(|x| {
        let a = |i: usize| c.g.atom(i);
        format!("I(I({})) = {}", a(x), a(c.inv[c.inv[x]]))
    })
}

fn involution_defect_linear(c: &LinearCandidate) -> Option<String> {
    let sq = c.inv.mul(&c.inv);
    (sq != Matrix::identity(c.g.dim())).then(|| "I∘I ≠ Id".to_string())
}

fn derive_set_unchecked(c: &SetCandidate) -> Result<Derived<Rel>, RelGpdError> {
    let i = c.i_rel();
    derive_generic(&c.g, c.l.clone(), &i, i.clone(), i.name())
}

fn derive_linear_unchecked(c: &LinearCandidate) -> Result<Derived<LinRelation>, RelGpdError> {
    let i = c.i_rel();
    let mut d = derive_generic(&c.g, c.l_rel(), &i, c.i_endo(), c.l_i())?;
    d.lagrangian = vec![
        ("L".to_string(), d.l_rel.is_lagrangian()),
        ("graph(I)".to_string(), i.is_lagrangian()),
        ("L1".to_string(), d.l1.is_lagrangian()),
        ("L2".to_string(), d.l2.is_lagrangian()),
        ("L3".to_string(), d.l3.is_lagrangian()),
    ];
    Ok(d)
}

/// Computes `L3 = I∘L`, `L1 = L3∘L_I`, `L2 = L3∘(L1×Id)` and `C = L2∘G`.
pub fn derive(c: &RelGroupoidCandidate, budget: &Budget) -> Result<DerivedData, RelGpdError> {
    match c {
        RelGroupoidCandidate::Set(c) => {
            set_budget(c, budget)?;
            if let Some(w) = involution_defect_set(c) {
                return Err(RelGpdError::NotInvolution(w));
            }
            Ok(DerivedData::Set(derive_set_unchecked(c)?))
        }
        RelGroupoidCandidate::Linear(c) => {
            if let Some(w) = involution_defect_linear(c) {
                return Err(RelGpdError::NotInvolution(w));
            }
            Ok(DerivedData::Linear(derive_linear_unchecked(c)?))
        }
    }
}

fn unequal<R: Calculus>(lname: &str, l: &R, rname: &str, r: &R) -> String {
    format!("{lname}={} ≠ {rname}={}", l.show(), r.show())
}

/// A.4–A.6 on derived data.
fn algebraic_laws<R: Calculus>(d: &Derived<R>, g: &R::Space, report: &mut Report) -> Result<(), RelGpdError> {
    let id = R::identity(g);
    let left = d.l3.times(&id).then(&d.l3)?;
    let right = id.times(&d.l3).then(&d.l3)?.with_src_of(&left);
    report.check("A.4", left == right, || unequal("L3∘(L3×Id)", &left, "L3∘(Id×L3)∘α", &right));

    let pt = R::point();
    let l11 = R::left_unitor(&pt).then(&d.l1.times(&d.l1))?.then(&d.l3)?;
    report.check("A.5", l11 == d.l1, || unequal("L3∘(L1×L1)", &l11, "L1", &d.l1));

    report.pass("A.6");
    if d.l2 != d.l2_right {
        report.fail("A.6", unequal("L3∘(L1×Id)", &d.l2, "L3∘(Id×L1)", &d.l2_right));
    }
    let l2l1 = d.l1.then(&d.l2)?;
    if l2l1 != d.l1 {
        report.fail("A.6", unequal("L2∘L1", &l2l1, "L1", &d.l1));
    }
    let l2l3 = d.l3.then(&d.l2)?;
    if l2l3 != d.l3 {
        report.fail("A.6", unequal("L2∘L3", &l2l3, "L3", &d.l3));
    }
    let l3l22 = d.l2.times(&d.l2).then(&d.l3)?;
    if l3l22 != d.l3 {
        report.fail("A.6", unequal("L3∘(L2×L2)", &l3l22, "L3", &d.l3));
    }
    let il2 = d.l2.then(&d.i_endo)?;
    let l2i = d.i_endo.then(&d.l2)?;
    if il2 != l2i {
        report.fail("A.6", unequal("I∘L2", &il2, "L2∘I", &l2i));
    }
    let dag = d.l2.dagger();
    if dag != d.l2 {
        report.fail("A.6", unequal("L2†", &dag, "L2", &d.l2));
    }
    let l22 = d.l2.then(&d.l2)?;
    if l22 != d.l2 {
        report.fail("A.6", unequal("L2∘L2", &l22, "L2", &d.l2));
    }
    Ok(())
}

fn set_pointwise_laws(c: &SetCandidate, report: &mut Report) {
    let a = |i: usize| c.g.atom(i).to_string();
    let triples = c.index_triples();
    report.pass("A.1");
    if let Some(&(x, y, z)) = triples.iter().find(|&&(x, y, z)| !c.contains(y, z, x)) {
        report.fail(
            "A.1",
            format!("({},{},{})∈L but ({},{},{})∉L", a(x), a(y), a(z), a(y), a(z), a(x)),
        );
    }

    report.pass("A.2");
    if let Some(w) = involution_defect_set(c) {
        report.fail("A.2", w);
    }

    // (x,y,z)∈L ⇔ (Iy,Ix,Iz)∈L, over all of G³
    report.pass("A.3");
    let n = c.g.len();
    let i = &c.inv;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let here = c.contains(x, y, z);
                let there = c.contains(i[y], i[x], i[z]);
                if here != there {
                    let (yes, no) = if here {
                        ((x, y, z), (i[y], i[x], i[z]))
                    } else {
                        ((i[y], i[x], i[z]), (x, y, z))
                    };
                    report.fail(
                        "A.3",
                        format!(
                            "({},{},{})∈L but ({},{},{})∉L",
                            a(yes.0),
                            a(yes.1),
                            a(yes.2),
                            a(no.0),
                            a(no.1),
                            a(no.2)
                        ),
                    );
                    break 'outer;
                }
            }
        }
    }
}

fn linear_pointwise_laws(c: &LinearCandidate, report: &mut Report) {
    let id = Matrix::identity(c.g.dim());
    let cyc = c.transform([[None, Some(&id), None], [None, None, Some(&id)], [Some(&id), None, None]]);
    report.check("A.1", cyc == c.l, || {
        format!("cyclic shift of L = {} ≠ L = {}", show_subspace(&cyc), show_subspace(&c.l))
    });
    report.pass("A.2");
    if let Some(w) = involution_defect_linear(c) {
        report.fail("A.2", w);
    }
    let i = &c.inv;
    let conj = c.transform([[None, Some(i), None], [Some(i), None, None], [None, None, Some(i)]]);
    report.check("A.3", conj == c.l, || {
        format!("(Iy,Ix,Iz)-image of L = {} ≠ L = {}", show_subspace(&conj), show_subspace(&c.l))
    });
}

/// A.1–A.6. Linear mode adds the law `Lagrangian` for `L`, `graph(I)`,
/// `L1`, `L2` and `L3`.
pub fn check_core_axioms(c: &RelGroupoidCandidate, budget: &Budget) -> Result<Report, RelGpdError> {
    let mut report = Report::new();
    match c {
        RelGroupoidCandidate::Set(s) => {
            set_budget(s, budget)?;
            set_pointwise_laws(s, &mut report);
            let d = derive_set_unchecked(s)?;
            algebraic_laws(&d, &s.g, &mut report)?;
            report.note(format!("L1 = {}", d.l1));
        }
        RelGroupoidCandidate::Linear(l) => {
            linear_pointwise_laws(l, &mut report);
            let d = derive_linear_unchecked(l)?;
            algebraic_laws(&d, &l.g, &mut report)?;
            report.pass("Lagrangian");
            for (name, ok) in &d.lagrangian {
                if !ok {
                    report.fail("Lagrangian", format!("{name} is not Lagrangian"));
                }
            }
            report.note(format!("dim L1 = {}", d.l1.space.dim()));
        }
    }
    Ok(report)
}

/// Set-mode outcome of A.7–A.9.
#[derive(Clone, Debug)]
pub struct SetRegularity {
    pub report: Report,
    /// `C = L2∘G` as positions.
    pub c: Vec<usize>,
    /// Classes of `L2` on `C`, each sorted, ordered by smallest member.
    pub c_classes: Vec<Vec<usize>>,
    /// `M = L1/L2` as classes of positions.
    pub m_classes: Vec<Vec<usize>>,
    /// Carrier of `M`, labelled by the smallest member of each class.
    pub m: Carrier,
    /// `S : G ↛ M`, `c ↦ [l]` for `(l,c,g) ∈ L3`.
    pub s: Rel,
    /// `T : G ↛ M`, `c ↦ [l]` for `(c,l,g) ∈ L3`.
    pub t: Rel,
}

/// Linear-mode outcome: A.7 and A.8 only.
#[derive(Clone, Debug)]
pub struct LinearRegularity {
    pub report: Report,
    pub c: Subspace,
    /// `dim L1 − dim(L1 ∩ K)` with `K = {v | (v,0) ∈ L2}`.
    pub m_dim: usize,
}

#[derive(Clone, Debug)]
pub enum Regularity {
    Set(SetRegularity),
    Linear(LinearRegularity),
}

impl Regularity {
    pub fn report(&self) -> &Report {
        match self {
            Regularity::Set(r) => &r.report,
            Regularity::Linear(r) => &r.report,
        }
    }
}

/// Classes of `r` on `members`, assuming `r` is an equivalence there.
fn classes_on(r: &Rel, members: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; r.src().len()];
    let mut out = Vec::new();
    for &x in members {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = members.iter().copied().filter(|&y| r.contains_idx(x, y)).collect();
        for &y in &class {
            seen[y] = true;
        }
        if !class.contains(&x) {
            seen[x] = true;
            out.push(vec![x]);
        } else {
            out.push(class);
        }
    }
    out
}

/// Why `r` restricted to `members` is not an equivalence, if it is not.
fn equivalence_defect(r: &Rel, members: &[usize], a: impl Fn(usize) -> String) -> Option<String> {
    for &x in members {
        if !r.contains_idx(x, x) {
            return Some(format!("({},{}) missing", a(x), a(x)));
        }
    }
    for &x in members {
        for &y in members {
            if r.contains_idx(x, y) && !r.contains_idx(y, x) {
                return Some(format!("({},{}) present but ({},{}) missing", a(x), a(y), a(y), a(x)));
            }
        }
    }
    for &x in members {
        for &y in members {
            if !r.contains_idx(x, y) {
                continue;
            }
            for &z in members {
                if r.contains_idx(y, z) && !r.contains_idx(x, z) {
                    return Some(format!(
                        "({},{}) and ({},{}) present but ({},{}) missing",
                        a(x),
                        a(y),
                        a(y),
                        a(z),
                        a(x),
                        a(z)
                    ));
                }
            }
        }
    }
    None
}

fn set_regularity(c: &SetCandidate, d: &Derived<Rel>) -> SetRegularity {
    let g = &c.g;
    let a = |i: usize| g.atom(i).to_string();
    let mut report = Report::new();
    let cc = d.c.members();
    let l1 = d.l1.members();

    // A.7
    report.pass("A.7");
    let in_c = {
        let mut v = vec![false; g.len()];
        for &x in &cc {
            v[x] = true;
        }
        v
    };
    if let Some((x, y)) = d.l2.index_pairs().find(|&(x, y)| !in_c[x] || !in_c[y]) {
        report.fail("A.7", format!("({},{})∈L2 leaves C", a(x), a(y)));
    }
    if let Some(w) = equivalence_defect(&d.l2, &cc, a) {
        report.fail("A.7", format!("L2 is not an equivalence on C: {w}"));
    }
    report.note(format!("C = {}", d.c));

    // A.8
    report.pass("A.8");
    if let Some(&x) = l1.iter().find(|&&x| !in_c[x]) {
        report.fail("A.8", format!("{} ∈ L1 but not in C", a(x)));
    }
    if let Some(w) = equivalence_defect(&d.l2, &l1, a) {
        report.fail("A.8", format!("L2 ∩ L1×L1 is not an equivalence on L1: {w}"));
    }
    let m_classes = classes_on(&d.l2, &l1);
    let c_classes = classes_on(&d.l2, &cc);
    let m = Carrier::new(m_classes.iter().map(|k| g.atom(k[0]).clone())).expect("distinct representatives");
    report.note(format!("M has {} classes", m_classes.len()));
    report.note(format!("C/L2 has {} classes", c_classes.len()));

    // A.9
    let mut class_of_l1 = vec![None; g.len()];
    for (k, class) in m_classes.iter().enumerate() {
        for &x in class {
            class_of_l1[x] = Some(k);
        }
    }
    let mut s = Rel::empty(g, &m);
    let mut t = Rel::empty(g, &m);
    let l3 = &d.l3;
    for &x in &cc {
        for &l in &l1 {
            let k = class_of_l1[l].expect("every L1 member has a class");
            if l3.row_len(l3.src().pair_index(l, x)) > 0 {
                s.insert(x, k);
            }
            if l3.row_len(l3.src().pair_index(x, l)) > 0 {
                t.insert(x, k);
            }
        }
    }
    report.pass("A.9");
    let mut off_diagonal = None;
    let mut hit = vec![false; m.len()];
    for (x, y) in d.l2.index_pairs() {
        for i in s.row(x) {
            for j in s.row(y) {
                if i == j {
                    hit[i] = true;
                } else if off_diagonal.is_none() {
                    off_diagonal = Some((x, y, i, j));
                }
            }
        }
    }
    if let Some((x, y, i, j)) = off_diagonal {
        report.fail(
            "A.9",
            format!(
                "(S×S)∘L2 ∋ ({},{}) from ({},{})∈L2",
                m.atom(i),
                m.atom(j),
                a(x),
                a(y)
            ),
        );
    }
    if let Some(i) = (0..m.len()).find(|&i| !hit[i]) {
        report.fail("A.9", format!("(S×S)∘L2 misses ({},{})", m.atom(i), m.atom(i)));
    }
    if let Some(&x) = cc.iter().find(|&&x| s.row_len(x) != 1) {
        let images: Vec<String> = s.row(x).map(|i| m.atom(i).to_string()).collect();
        report.fail("A.9", format!("S({}) = {{{}}} is not a single class", a(x), images.join(",")));
    }
    let image = s.image();
    if let Some(i) = (0..m.len()).find(|i| !image.contains(i)) {
        report.fail("A.9", format!("S does not reach [{}]", m.atom(i)));
    }
    let t_via_i = c.i_rel().then(&s).expect("same carriers");
    report.note(format!("T = S∘I: {}", t_via_i == t));

    SetRegularity {
        report,
        c: cc,
        c_classes,
        m_classes,
        m,
        s,
        t,
    }
}

fn linear_regularity(d: &Derived<LinRelation>, g: &SympSpace) -> LinearRegularity {
    let mut report = Report::new();
    let n = g.dim();
    let c = d.c.space.clone();
    let class = g.classify(&c).expect("dims");
    report.check("A.7", class.coisotropic, || format!("C = {} is not coisotropic", show_subspace(&c)));
    // L2 ⊆ C⊕C, Δ_C ⊆ L2, L2 symmetric and transitive
    let mut cols = Vec::new();
    for v in c.basis_vectors() {
        let mut col = vec![q(0); 2 * n];
        col[..n].clone_from_slice(&v);
        cols.push(col);
        let mut col = vec![q(0); 2 * n];
        col[n..].clone_from_slice(&v);
        cols.push(col);
    }
    let c_sum = Subspace::span(2 * n, &cols);
    if !d.l2.space.is_subspace_of(&c_sum) {
        report.fail("A.7", "L2 is not contained in C×C".to_string());
    }
    let diag: Vec<_> = c
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(v);
            w
        })
        .collect();
    if !Subspace::span(2 * n, &diag).is_subspace_of(&d.l2.space) {
        report.fail("A.7", "L2 does not contain the diagonal of C".to_string());
    }
    if d.l2.dagger() != d.l2 {
        report.fail("A.7", "L2 is not symmetric".to_string());
    }
    let sq = d.l2.then(&d.l2).expect("endorelation");
    if !sq.space.is_subspace_of(&d.l2.space) {
        report.fail("A.7", "L2 is not transitive".to_string());
    }

    // K = {v | (v,0) ∈ L2}
    let zero_tail: Vec<_> = (0..n)
        .map(|i| {
            let mut e = vec![q(0); 2 * n];
            e[i] = q(1);
            e
        })
        .collect();
    let first = Subspace::span(2 * n, &zero_tail);
    let k_pairs = d.l2.space.intersection(&first);
    let k_vecs: Vec<Vec<_>> = k_pairs.basis_vectors().into_iter().map(|v| v[..n].to_vec()).collect();
    let k = Subspace::span(n, &k_vecs);
    let l1 = &d.l1.space;
    report.check("A.8", l1.is_subspace_of(&c), || "L1 is not contained in C".to_string());
    let m_dim = l1.dim() - l1.intersection(&k).dim();
    report.note(format!("dim M = {m_dim}"));
    report.note("A.9 is evaluated in set mode only".to_string());
    LinearRegularity { report, c, m_dim }
}

/// A.7–A.9 with the quotient data `M`, `S`, `T`. Requires the core axioms.
pub fn check_regularity(c: &RelGroupoidCandidate, budget: &Budget) -> Result<Regularity, RelGpdError> {
    let core = check_core_axioms(c, budget)?;
    if !core.verdict() {
        return Err(RelGpdError::Precondition(Box::new(core)));
    }
    Ok(match c {
        RelGroupoidCandidate::Set(s) => Regularity::Set(set_regularity(s, &derive_set_unchecked(s)?)),
        RelGroupoidCandidate::Linear(l) => Regularity::Linear(linear_regularity(&derive_linear_unchecked(l)?, &l.g)),
    })
}

/// The groupoid `C/L2 ⇒ M` of a regular set-mode candidate.
pub fn reduce_to_groupoid(c: &RelGroupoidCandidate, budget: &Budget) -> Result<Groupoid, RelGpdError> {
    let s = match c {
        RelGroupoidCandidate::Set(s) => s,
        RelGroupoidCandidate::Linear(_) => {
            return Err(RelGpdError::Unsupported("reduction is implemented for set mode".into()))
        }
    };
    let reg = match check_regularity(c, budget)? {
        Regularity::Set(r) => r,
        Regularity::Linear(_) => unreachable!(),
    };
    if !reg.report.verdict() {
        return Err(RelGpdError::Precondition(Box::new(reg.report)));
    }
    let d = derive_set_unchecked(s)?;
    let g = &s.g;
    let a = |i: usize| g.atom(i).to_string();

    let none = usize::MAX;
    let mut arrow_of = vec![none; g.len()];
    for (k, class) in reg.c_classes.iter().enumerate() {
        for &x in class {
            arrow_of[x] = k;
        }
    }
    let mut object_of = vec![none; g.len()];
    for (k, class) in reg.m_classes.iter().enumerate() {
        for &x in class {
            object_of[x] = k;
        }
    }
    let arrows = Carrier::new(reg.c_classes.iter().map(|k| g.atom(k[0]).clone())).expect("distinct");
    let n1 = arrows.len();

    let mut table: Vec<Option<usize>> = vec![None; n1 * n1];
    let mut triples = Vec::new();
    for (k, z) in d.l3.index_pairs() {
        let (x, y) = d.l3.src().split_index(k);
        if arrow_of[x] == none || arrow_of[y] == none {
            continue;
        }
        if arrow_of[z] == none {
            return Err(RelGpdError::NotSingleValued(format!(
                "(({},{}),{})∈L3 with {} outside C",
                a(x),
                a(y),
                a(z),
                a(z)
            )));
        }
        let (p, q, r) = (arrow_of[x], arrow_of[y], arrow_of[z]);
        match table[p * n1 + q] {
            Some(old) if old != r => {
                return Err(RelGpdError::NotSingleValued(format!(
                    "([{}],[{}]) ↦ [{}] and [{}]",
                    arrows.atom(p),
                    arrows.atom(q),
                    arrows.atom(old),
                    arrows.atom(r)
                )))
            }
            Some(_) => {}
            None => {
                table[p * n1 + q] = Some(r);
                triples.push((p, q, r));
            }
        }
    }

    let mut source = Vec::with_capacity(n1);
    let mut target = Vec::with_capacity(n1);
    for class in &reg.c_classes {
        let x = class[0];
        let one = |r: &Rel| -> Result<usize, RelGpdError> {
            let row: Vec<usize> = r.row(x).collect();
            match row.as_slice() {
                [k] => Ok(*k),
                _ => Err(RelGpdError::NotSingleValued(format!(
                    "{} has {} candidate endpoints",
                    a(x),
                    row.len()
                ))),
            }
        };
        source.push(one(&reg.t)?);
        target.push(one(&reg.s)?);
    }
    let unit: Vec<usize> = reg.m_classes.iter().map(|k| arrow_of[k[0]]).collect();
    let inverse: Vec<usize> = reg.c_classes.iter().map(|k| arrow_of[s.inv[k[0]]]).collect();
    if inverse.contains(&none) {
        return Err(RelGpdError::NotSingleValued("I leaves C".into()));
    }
    let gpd = Groupoid::from_tables(&reg.m, &arrows, source, target, unit, inverse, triples)?;
    let check = check_groupoid_axioms(&gpd);
    if !check.verdict() {
        return Err(RelGpdError::InvalidReduction(Box::new(check)));
    }
    Ok(gpd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Morphism,
    Equivalence,
}

fn morphism_laws<R: Calculus>(
    f: &R,
    a: (&Derived<R>, &R::Space),
    b: (&Derived<R>, &R::Space),
    suffix: &str,
    report: &mut Report,
) -> Result<(), RelGpdError> {
    if f.src() != a.1 || f.dst() != b.1 {
        return Err(RelGpdError::Param("F does not go between the two carriers".into()));
    }
    let lhs = a.0.i_endo.then(f)?;
    let rhs = f.then(&b.0.i_endo)?;
    let law = format!("I{suffix}");
    report.check(&law, lhs == rhs, || unequal("F∘I", &lhs, "I∘F", &rhs));
    let lhs = f.times(f).then(&b.0.l_rel)?;
    let rhs = a.0.l_rel.then(&f.conj())?;
    let law = format!("L{suffix}");
    report.check(&law, lhs == rhs, || unequal("L∘(F×F)", &lhs, "F∘L", &rhs));
    Ok(())
}

fn check_morphism_generic<R: Calculus>(
    f: &R,
    a: (&Derived<R>, &R::Space),
    b: (&Derived<R>, &R::Space),
    kind: MorphismKind,
    report: &mut Report,
) -> Result<(), RelGpdError> {
    morphism_laws(f, a, b, "", report)?;
    if kind == MorphismKind::Equivalence {
        morphism_laws(&f.dagger(), b, a, "†", report)?;
        let ff = f.then(&f.dagger())?;
        report.check("F†∘F=L2", ff == a.0.l2, || unequal("F†∘F", &ff, "L2", &a.0.l2));
        let ff = f.dagger().then(f)?;
        report.check("F∘F†=L2", ff == b.0.l2, || unequal("F∘F†", &ff, "L2", &b.0.l2));
    }
    Ok(())
}

/// A relation between the carriers of two candidates, in the matching mode.
#[derive(Clone, Debug, PartialEq)]
pub enum GpdRelation {
    Set(Rel),
    Linear(LinRelation),
}

/// Checks `F∘I = I∘F` and `L∘(F×F) = F∘L`; for equivalences also for `F†`
/// together with `F†∘F = L2` and `F∘F† = L2`.
pub fn check_morphism(
    f: &GpdRelation,
    a: &RelGroupoidCandidate,
    b: &RelGroupoidCandidate,
    kind: MorphismKind,
    budget: &Budget,
) -> Result<Report, RelGpdError> {
    let mut report = Report::new();
    for (name, c) in [("source", a), ("target", b)] {
        let core = check_core_axioms(c, budget)?;
        if !core.verdict() {
            report.note(format!("{name} fails {}", core.failed_laws()));
        }
    }
    match (f, a, b) {
        (GpdRelation::Set(f), RelGroupoidCandidate::Set(a), RelGroupoidCandidate::Set(b)) => {
            let (da, db) = (derive_set_unchecked(a)?, derive_set_unchecked(b)?);
            check_morphism_generic(f, (&da, &a.g), (&db, &b.g), kind, &mut report)?;
        }
        (GpdRelation::Linear(f), RelGroupoidCandidate::Linear(a), RelGroupoidCandidate::Linear(b)) => {
            let (da, db) = (derive_linear_unchecked(a)?, derive_linear_unchecked(b)?);
            check_morphism_generic(f, (&da, &a.g), (&db, &b.g), kind, &mut report)?;
            report.check("Lagrangian", f.is_lagrangian(), || "F is not Lagrangian".to_string());
        }
        _ => return Err(RelGpdError::Param("F and the candidates mix set and linear mode".into())),
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
