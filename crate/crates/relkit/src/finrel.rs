//! Finite carriers and relations between them.
//!
//! A [`Rel`] is stored as a dense bit matrix indexed by carrier positions, so
//! composition is a row-wise OR and equality is word comparison. Carriers are
//! shared behind an `Arc`; products remember their factors, which makes
//! product-carrier equality cheap and keeps pair indices computable.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::atom::Atom;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
    #[error("atom {atom} is not an element of {carrier}")]
    UnknownAtom { atom: String, carrier: String },
    #[error("duplicate atom {0}")]
    DuplicateAtom(String),
    #[error("relation is not an endorelation ({src} -> {dst})")]
    NotEndo { src: String, dst: String },
    #[error("map table is not total: {0} has no image")]
    NotTotal(String),
    #[error("map table is multi-valued at {0}")]
    MultiValued(String),
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },
}

/// Upper bound on exhaustive work. Checks that would exceed it refuse to run
/// instead of sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000,
        }
    }
}

impl Budget {
    pub fn new(max_pairs: u128) -> Self {
        Budget { max_pairs }
    }

    pub fn ensure(&self, what: &str, needed: u128) -> Result<(), RelError> {
        if needed > self.max_pairs {
            Err(RelError::BudgetExceeded {
                what: what.to_string(),
                needed,
                budget: self.max_pairs,
            })
        } else {
            Ok(())
        }
    }
}

struct CarrierData {
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
    factors: Option<(Carrier, Carrier)>,
}

/// A finite set of distinct atoms in insertion order.
#[derive(Clone)]
pub struct Carrier(Arc<CarrierData>);

impl Carrier {
    pub fn new<I, A>(atoms: I) -> Result<Carrier, RelError>
    where
        I: IntoIterator<Item = A>,
        A: Into<Atom>,
    {
        let atoms: Vec<Atom> = atoms.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(RelError::DuplicateAtom(a.to_string()));
            }
        }
        Ok(Carrier(Arc::new(CarrierData {
            atoms,
            index,
            factors: None,
        })))
    }

    /// `{0, 1, ..., k-1}` as integer atoms.
    pub fn range(k: usize) -> Carrier {
        Carrier::new((0..k as i64).map(Atom::Int)).expect("distinct integers")
    }

    /// The one-element carrier `{*}`. Always the same shared instance.
    pub fn point() -> Carrier {
        static POINT: OnceLock<Carrier> = OnceLock::new();
        POINT
            .get_or_init(|| Carrier::new([Atom::Point]).expect("single atom"))
            .clone()
    }

    /// Cartesian product in row-major order: `(a_i, b_j)` sits at `i * |B| + j`.
    pub fn product(&self, other: &Carrier) -> Carrier {
        let mut atoms = Vec::with_capacity(self.len() * other.len());
        for a in self.atoms() {
            for b in other.atoms() {
                atoms.push(Atom::pair(a.clone(), b.clone()));
            }
        }
        let index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Carrier(Arc::new(CarrierData {
            atoms,
            index,
            factors: Some((self.clone(), other.clone())),
        }))
    }

    pub fn len(&self) -> usize {
        self.0.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0.atoms
    }

    pub fn atom(&self, i: usize) -> &Atom {
        &self.0.atoms[i]
    }

    pub fn index_of(&self, a: &Atom) -> Option<usize> {
        self.0.index.get(a).copied()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.index.contains_key(a)
    }

    pub fn require(&self, a: &Atom) -> Result<usize, RelError> {
        self.index_of(a).ok_or_else(|| RelError::UnknownAtom {
            atom: a.to_string(),
            carrier: self.to_string(),
        })
    }

    pub fn factors(&self) -> Option<(&Carrier, &Carrier)> {
        self.0.factors.as_ref().map(|(a, b)| (a, b))
    }

    /// Position of `(i, j)` in a product carrier.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        let (_, b) = self.factors().expect("pair_index on a non-product carrier");
        i * b.len() + j
    }

    /// Inverse of [`Carrier::pair_index`].
    pub fn split_index(&self, k: usize) -> (usize, usize) {
        let (_, b) = self.factors().expect("split_index on a non-product carrier");
        (k / b.len(), k % b.len())
    }

    pub fn ptr_eq(&self, other: &Carrier) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn ensure_same(&self, other: &Carrier) -> Result<(), RelError> {
        if self == other {
            Ok(())
        } else {
            Err(RelError::CarrierMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Carrier) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.len() != other.len() {
            return false;
        }
        match (self.factors(), other.factors()) {
            (Some((a, b)), Some((c, d))) => a == c && b == d,
            _ => self.atoms() == other.atoms(),
        }
    }
}

impl Eq for Carrier {}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.factors() {
            return write!(f, "{a}×{b}");
        }
        write!(f, "{{")?;
        for (i, a) in self.atoms().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if i == 8 && self.len() > 9 {
                return write!(f, "…({} atoms)}}", self.len());
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Carrier{self}")
    }
}

/// A relation `src ↛ dst`.
#[derive(Clone)]
pub struct Rel {
    src: Carrier,
    dst: Carrier,
    words: usize,
    bits: Vec<u64>,
}

impl PartialEq for Rel {
    fn eq(&self, other: &Rel) -> bool {
        self.src == other.src && self.dst == other.dst && self.bits == other.bits
    }
}

impl Eq for Rel {}

impl Rel {
    pub fn empty(src: &Carrier, dst: &Carrier) -> Rel {
        let words = dst.len().div_ceil(64);
        Rel {
            src: src.clone(),
            dst: dst.clone(),
            words,
            bits: vec![0; words * src.len()],
        }
    }

    pub fn from_pairs<I>(src: &Carrier, dst: &Carrier, pairs: I) -> Result<Rel, RelError>
    where
        I: IntoIterator<Item = (Atom, Atom)>,
    {
        let mut r = Rel::empty(src, dst);
        for (a, b) in pairs {
            let i = src.require(&a)?;
            let j = dst.require(&b)?;
            r.insert(i, j);
        }
        Ok(r)
    }

    /// Panics if an index is out of range.
    pub fn from_index_pairs<I>(src: &Carrier, dst: &Carrier, pairs: I) -> Rel
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Rel::empty(src, dst);
        for (i, j) in pairs {
            assert!(i < src.len() && j < dst.len(), "pair index out of range");
            r.insert(i, j);
        }
        r
    }

    pub fn src(&self) -> &Carrier {
        &self.src
    }

    pub fn dst(&self) -> &Carrier {
        &self.dst
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    #[inline]
    pub fn contains_idx(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn contains(&self, a: &Atom, b: &Atom) -> bool {
        match (self.src.index_of(a), self.dst.index_of(b)) {
            (Some(i), Some(j)) => self.contains_idx(i, j),
            _ => false,
        }
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Targets related to source position `i`, ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All pairs as positions, in lexicographic position order.
    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.src.len()).flat_map(move |i| self.row(i).map(move |j| (i, j)))
    }

    pub fn pairs(&self) -> Vec<(Atom, Atom)> {
        self.index_pairs()
            .map(|(i, j)| (self.src.atom(i).clone(), self.dst.atom(j).clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Rel) -> Result<Rel, RelError> {
        self.dst.ensure_same(&other.src)?;
        let mut out = Rel::empty(&self.src, &other.dst);
        let w = out.words;
        for i in 0..self.src.len() {
            let (start, end) = (i * w, (i + 1) * w);
            for k in self.row(i) {
                let src_row = other.row_words(k);
                for (o, s) in out.bits[start..end].iter_mut().zip(src_row) {
                    *o |= *s;
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Rel) -> Result<Rel, RelError> {
        first.then(self)
    }

    /// The converse relation.
    pub fn dagger(&self) -> Rel {
        let mut out = Rel::empty(&self.dst, &self.src);
        for (i, j) in self.index_pairs() {
            out.insert(j, i);
        }
        out
    }

    /// `self × other : src×other.src ↛ dst×other.dst`.
    pub fn product(&self, other: &Rel) -> Rel {
        let src = self.src.product(&other.src);
        let dst = self.dst.product(&other.dst);
        self.product_into(other, &src, &dst)
    }

    /// Like [`Rel::product`] but reusing already-built product carriers.
    pub fn product_into(&self, other: &Rel, src: &Carrier, dst: &Carrier) -> Rel {
        let mut out = Rel::empty(src, dst);
        let (m, n) = (other.src.len(), other.dst.len());
        for (a, b) in self.index_pairs() {
            for (c, d) in other.index_pairs() {
                out.insert(a * m + c, b * n + d);
            }
        }
        out
    }

    pub fn union(&self, other: &Rel) -> Result<Rel, RelError> {
        self.same_type(other)?;
        let mut out = self.clone();
        for (o, s) in out.bits.iter_mut().zip(&other.bits) {
            *o |= *s;
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Rel) -> Result<Rel, RelError> {
        self.same_type(other)?;
        let mut out = self.clone();
        for (o, s) in out.bits.iter_mut().zip(&other.bits) {
            *o &= *s;
        }
        Ok(out)
    }

    pub fn is_subset(&self, other: &Rel) -> Result<bool, RelError> {
        self.same_type(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    fn same_type(&self, other: &Rel) -> Result<(), RelError> {
        self.src.ensure_same(&other.src)?;
        self.dst.ensure_same(&other.dst)
    }

    /// Every source element relates to at most one target.
    pub fn is_single_valued(&self) -> bool {
        (0..self.src.len()).all(|i| self.row_len(i) <= 1)
    }

    /// Every source element relates to at least one target.
    pub fn is_total(&self) -> bool {
        (0..self.src.len()).all(|i| self.row_words(i).iter().any(|&w| w != 0))
    }

    pub fn is_function(&self) -> bool {
        (0..self.src.len()).all(|i| self.row_len(i) == 1)
    }

    /// The unique image of each source element, if this is a function.
    pub fn as_function(&self) -> Option<Vec<usize>> {
        (0..self.src.len())
            .map(|i| {
                let mut it = self.row(i);
                match (it.next(), it.next()) {
                    (Some(j), None) => Some(j),
                    _ => None,
                }
            })
            .collect()
    }

    /// Positions in `dst` reached from some source element.
    pub fn image(&self) -> Vec<usize> {
        let mut acc = vec![0u64; self.words];
        for i in 0..self.src.len() {
            for (a, w) in acc.iter_mut().zip(self.row_words(i)) {
                *a |= *w;
            }
        }
        (0..self.dst.len())
            .filter(|j| acc[j / 64] >> (j % 64) & 1 == 1)
            .collect()
    }

    /// Positions in `src` related to something.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.src.len())
            .filter(|&i| self.row_words(i).iter().any(|&w| w != 0))
            .collect()
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.dst
    }

    // ---- structural relations ----

    pub fn identity(a: &Carrier) -> Rel {
        Rel::from_index_pairs(a, a, (0..a.len()).map(|i| (i, i)))
    }

    /// `Δ : A ↛ A×A`, `x ↦ (x,x)`.
    pub fn diagonal(a: &Carrier) -> Rel {
        let aa = a.product(a);
        Rel::from_index_pairs(a, &aa, (0..a.len()).map(|i| (i, aa.pair_index(i, i))))
    }

    /// `σ : A×B ↛ B×A`.
    pub fn swap(a: &Carrier, b: &Carrier) -> Rel {
        let ab = a.product(b);
        let ba = b.product(a);
        let mut r = Rel::empty(&ab, &ba);
        for i in 0..a.len() {
            for j in 0..b.len() {
                r.insert(ab.pair_index(i, j), ba.pair_index(j, i));
            }
        }
        r
    }

    /// Re-associator `(A×B)×C ↛ A×(B×C)`.
    pub fn associator(a: &Carrier, b: &Carrier, c: &Carrier) -> Rel {
        let left = a.product(b).product(c);
        let right = a.product(&b.product(c));
        let n = a.len() * b.len() * c.len();
        // both products enumerate (a,b,c) in the same lexicographic order
        Rel::from_index_pairs(&left, &right, (0..n).map(|k| (k, k)))
    }

    /// `A ↛ pt×A`.
    pub fn left_unitor(a: &Carrier) -> Rel {
        let pa = Carrier::point().product(a);
        Rel::from_index_pairs(a, &pa, (0..a.len()).map(|i| (i, i)))
    }

    /// `A ↛ A×pt`.
    pub fn right_unitor(a: &Carrier) -> Rel {
        let ap = a.product(&Carrier::point());
        Rel::from_index_pairs(a, &ap, (0..a.len()).map(|i| (i, i)))
    }

    /// Graph of a map given as a table. Rejects tables that miss a source
    /// atom or send one atom to two places.
    pub fn graph<I>(src: &Carrier, dst: &Carrier, table: I) -> Result<Rel, RelError>
    where
        I: IntoIterator<Item = (Atom, Atom)>,
    {
        let r = Rel::from_pairs(src, dst, table)?;
        for i in 0..src.len() {
            match r.row_len(i) {
                0 => return Err(RelError::NotTotal(src.atom(i).to_string())),
                1 => {}
                _ => return Err(RelError::MultiValued(src.atom(i).to_string())),
            }
        }
        Ok(r)
    }

    /// Graph of a map given by positions.
    pub fn graph_of_indices(src: &Carrier, dst: &Carrier, map: &[usize]) -> Rel {
        assert_eq!(map.len(), src.len());
        Rel::from_index_pairs(src, dst, map.iter().copied().enumerate())
    }

    /// The name `⌜r⌝ : pt ↛ A×B` of `r : A ↛ B`.
    pub fn name(&self) -> Rel {
        let ab = self.src.product(&self.dst);
        let pairs: Vec<usize> = self
            .index_pairs()
            .map(|(i, j)| ab.pair_index(i, j))
            .collect();
        Rel::from_index_pairs(&Carrier::point(), &ab, pairs.into_iter().map(|k| (0, k)))
    }

    /// A subset `S ⊆ X` as the relation `pt ↛ X`.
    pub fn subset(x: &Carrier, members: &[usize]) -> Rel {
        Rel::from_index_pairs(&Carrier::point(), x, members.iter().map(|&j| (0, j)))
    }

    /// Members of a `pt ↛ X` relation.
    pub fn members(&self) -> Vec<usize> {
        assert_eq!(self.src.len(), 1, "members() needs a relation out of the point");
        self.row(0).collect()
    }

    /// The total relation `A ↛ B`.
    pub fn total(a: &Carrier, b: &Carrier) -> Rel {
        let mut r = Rel::empty(a, b);
        for i in 0..a.len() {
            for j in 0..b.len() {
                r.insert(i, j);
            }
        }
        r
    }

    /// Pairs of `self` not in `other`, then pairs of `other` not in `self`.
    pub fn difference_witness(&self, other: &Rel) -> Option<String> {
        let extra = self.index_pairs().find(|&(i, j)| !other.contains_idx(i, j));
        if let Some((i, j)) = extra {
            return Some(format!(
                "({},{}) only on the left",
                self.src.atom(i),
                self.dst.atom(j)
            ));
        }
        other
            .index_pairs()
            .find(|&(i, j)| !self.contains_idx(i, j))
            .map(|(i, j)| format!("({},{}) only on the right", other.src.atom(i), other.dst.atom(j)))
    }
}

impl fmt::Display for Rel {
    /// Relations out of the point print as subsets `{x,y}`; others as pair sets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let from_point = self.src.len() == 1 && self.src.atom(0) == &Atom::Point;
        write!(f, "{{")?;
        for (n, (i, j)) in self.index_pairs().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            if n == 64 {
                return write!(f, "…({} pairs)}}", self.len());
            }
            if from_point {
                write!(f, "{}", self.dst.atom(j))?;
            } else {
                write!(f, "({},{})", self.src.atom(i), self.dst.atom(j))?;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rel[{} -> {}]{}", self.src, self.dst, self)
    }
}

/// `s ∘ r`.
pub fn compose(r: &Rel, s: &Rel) -> Result<Rel, RelError> {
    r.then(s)
}

/// Named structural relations.
pub enum Structural<'a> {
    Identity(&'a Carrier),
    Diagonal(&'a Carrier),
    Swap(&'a Carrier, &'a Carrier),
    GraphOfMap(&'a Carrier, &'a Carrier, &'a [(Atom, Atom)]),
    NameOfRel(&'a Rel),
    /// The identity on the one-point carrier.
    Point,
}

pub fn structural(kind: Structural<'_>) -> Result<Rel, RelError> {
    Ok(match kind {
        Structural::Identity(a) => Rel::identity(a),
        Structural::Diagonal(a) => Rel::diagonal(a),
        Structural::Swap(a, b) => Rel::swap(a, b),
        Structural::GraphOfMap(a, b, table) => Rel::graph(a, b, table.iter().cloned())?,
        Structural::NameOfRel(r) => r.name(),
        Structural::Point => Rel::identity(&Carrier::point()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelClass {
    pub is_function: bool,
    pub is_reflexive: bool,
    pub is_symmetric: bool,
    pub is_transitive: bool,
    pub is_equivalence: bool,
    pub is_idempotent: bool,
}

pub fn classify_relation(r: &Rel) -> Result<RelClass, RelError> {
    if !r.is_endo() {
        return Err(RelError::NotEndo {
            src: r.src.to_string(),
            dst: r.dst.to_string(),
        });
    }
    let rr = r.then(r)?;
    let is_reflexive = (0..r.src.len()).all(|i| r.contains_idx(i, i));
    let is_symmetric = r.dagger() == *r;
    let is_transitive = rr.is_subset(r)?;
    Ok(RelClass {
        is_function: r.is_function(),
        is_reflexive,
        is_symmetric,
        is_transitive,
        is_equivalence: is_reflexive && is_symmetric && is_transitive,
        is_idempotent: rr == *r,
    })
}

/// Equivalence classes of an equivalence relation, each as ascending positions,
/// ordered by smallest member.
pub fn classes(r: &Rel) -> Vec<Vec<usize>> {
    let n = r.src().len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = r.row(i).collect();
        for &j in &class {
            seen[j] = true;
        }
        seen[i] = true;
        out.push(class);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zk(k: usize) -> Carrier {
        Carrier::range(k)
    }

    fn shift(k: usize, by: usize) -> Rel {
        let c = zk(k);
        Rel::from_index_pairs(&c, &c, (0..k).map(|m| (m, (m + by) % k)))
    }

    #[test]
    fn identity_is_neutral() {
        let r = shift(5, 2);
        let id = Rel::identity(r.src());
        assert_eq!(r.after(&id).unwrap(), r);
        assert_eq!(id.after(&r).unwrap(), r);
    }

    #[test]
    fn shift_by_two_squared_mod_five() {
        let l2 = shift(5, 2);
        let sq = l2.after(&l2).unwrap();
        assert_eq!(sq, shift(5, 4));
        assert_ne!(sq, l2);
    }

    #[test]
    fn empty_absorbs() {
        let c = zk(3);
        let e = Rel::empty(&c, &c);
        let r = shift(3, 1);
        assert!(r.after(&e).unwrap().is_empty());
        assert!(e.after(&r).unwrap().is_empty());
    }

    #[test]
    fn mismatched_carriers_are_reported() {
        let r = shift(3, 1);
        let s = shift(4, 1);
        assert!(matches!(r.then(&s), Err(RelError::CarrierMismatch { .. })));
    }

    #[test]
    fn dagger_laws() {
        let c = zk(3);
        let r = Rel::from_index_pairs(&c, &c, [(0, 1), (0, 2), (2, 2)]);
        let s = Rel::from_index_pairs(&c, &c, [(1, 0), (2, 1)]);
        assert_eq!(r.dagger().dagger(), r);
        let lhs = s.after(&r).unwrap().dagger();
        let rhs = r.dagger().after(&s.dagger()).unwrap();
        // brute force
        let mut brute = Rel::empty(&c, &c);
        for a in 0..3 {
            for b in 0..3 {
                for m in 0..3 {
                    if r.contains_idx(a, m) && s.contains_idx(m, b) {
                        brute.insert(b, a);
                    }
                }
            }
        }
        assert_eq!(lhs, brute);
        assert_eq!(rhs, brute);
    }

    #[test]
    fn constant_map_converse_is_not_a_function() {
        let c = Carrier::new(["a", "b"]).unwrap();
        let k = Rel::graph(&c, &c, [("a".into(), "a".into()), ("b".into(), "a".into())]).unwrap();
        assert!(k.is_function());
        assert!(!k.dagger().is_single_valued());
    }

    #[test]
    fn product_counts_and_identity() {
        let a = zk(2);
        let b = zk(3);
        let id = Rel::identity(&a).product(&Rel::identity(&b));
        assert_eq!(id, Rel::identity(&a.product(&b)));
        let r = Rel::from_index_pairs(&a, &b, [(0, 1), (1, 2), (1, 0)]);
        let s = Rel::from_index_pairs(&b, &a, [(2, 1), (0, 0)]);
        assert_eq!(r.product(&s).len(), r.len() * s.len());
    }

    #[test]
    fn structural_examples() {
        let c = Carrier::new(["a", "b"]).unwrap();
        let d = Rel::diagonal(&c);
        assert_eq!(d.to_string(), "{(a,(a,a)),(b,(b,b))}");
        let r = Rel::from_pairs(&c, &c, [("a".into(), "b".into())]).unwrap();
        assert_eq!(r.name().to_string(), "{(a,b)}");
        assert_eq!(r.name().pairs(), vec![(Atom::Point, Atom::pair("a".into(), "b".into()))]);
        let sw = Rel::swap(&c, &c);
        assert_eq!(sw.then(&sw).unwrap(), Rel::identity(&c.product(&c)));
        assert!(structural(Structural::GraphOfMap(&c, &c, &[("a".into(), "a".into())])).is_err());
    }

    #[test]
    fn graph_rejects_multivalued() {
        let c = Carrier::new(["a", "b"]).unwrap();
        let t = [
            ("a".into(), "a".into()),
            ("a".into(), "b".into()),
            ("b".into(), "b".into()),
        ];
        assert_eq!(Rel::graph(&c, &c, t), Err(RelError::MultiValued("a".into())));
    }

    #[test]
    fn classification_examples() {
        let c = zk(4);
        let id = classify_relation(&Rel::identity(&c)).unwrap();
        assert!(id.is_equivalence && id.is_function && id.is_idempotent);

        let z8 = zk(8);
        let parity = Rel::from_index_pairs(
            &z8,
            &z8,
            (0..8).flat_map(|m| (0..8).filter(move |n| (m + 8 - n) % 2 == 0).map(move |n| (m, n))),
        );
        let p = classify_relation(&parity).unwrap();
        assert!(p.is_equivalence && p.is_idempotent && !p.is_function);

        let l2 = classify_relation(&shift(5, 2)).unwrap();
        assert!(l2.is_function && !l2.is_symmetric && !l2.is_idempotent);

        let a = zk(2);
        let b = zk(3);
        assert!(classify_relation(&Rel::total(&a, &b)).is_err());
    }

    #[test]
    fn duplicate_atoms_rejected() {
        assert!(matches!(Carrier::new(["a", "a"]), Err(RelError::DuplicateAtom(_))));
    }

    #[test]
    fn associator_moves_parentheses() {
        let a = zk(2);
        let al = Rel::associator(&a, &a, &a);
        let x = Atom::pair(Atom::pair(0.into(), 1.into()), 1.into());
        let y = Atom::pair(0.into(), Atom::pair(1.into(), 1.into()));
        assert!(al.contains(&x, &y));
        assert_eq!(al.len(), 8);
    }
}
