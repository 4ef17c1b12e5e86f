//! Relative Frobenius algebras in the category of relations and their
//! correspondence with finite groupoids.
//!
//! A multiplication `m : X×X ↛ X` is read as `((h,g),f) ∈ m` meaning `f = hg`.

use std::fmt;

use crate::atom::Atom;
use crate::finrel::{Budget, Carrier, Rel, RelError};
use crate::report::Report;

#[derive(Debug, Clone, thiserror::Error)]
pub enum FrobError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("multiplication must be a relation X×X ↛ X, got {src} ↛ {dst}")]
    Shape { src: String, dst: String },
    #[error("not a relative Frobenius algebra (failing: {})", .0.failed_laws())]
    NotFrobenius(Box<Report>),
    #[error("not a groupoid (failing: {})", .0.failed_laws())]
    InvalidGroupoid(Box<Report>),
    #[error("malformed groupoid: {0}")]
    Malformed(String),
    #[error("morphism precondition failed: {0}")]
    Precondition(String),
}

/// A carrier with a candidate multiplication.
#[derive(Clone, PartialEq, Eq)]
pub struct FrobCandidate {
    x: Carrier,
    m: Rel,
}

impl fmt::Debug for FrobCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrobCandidate({:?}, m={})", self.x, self.m)
    }
}

impl FrobCandidate {
    pub fn new(x: &Carrier, m: Rel) -> Result<FrobCandidate, FrobError> {
        let ok = m.dst() == x
            && matches!(m.src().factors(), Some((a, b)) if a == x && b == x);
        if !ok {
            return Err(FrobError::Shape {
                src: m.src().to_string(),
                dst: m.dst().to_string(),
            });
        }
        Ok(FrobCandidate { x: x.clone(), m })
    }

    /// Builds `m` from triples `(h, g, hg)`.
    pub fn from_triples<I>(x: &Carrier, triples: I) -> Result<FrobCandidate, FrobError>
    where
        I: IntoIterator<Item = (Atom, Atom, Atom)>,
    {
        let xx = x.product(x);
        let mut m = Rel::empty(&xx, x);
        for (h, g, f) in triples {
            let p = xx.pair_index(x.require(&h)?, x.require(&g)?);
            m.insert(p, x.require(&f)?);
        }
        Ok(FrobCandidate { x: x.clone(), m })
    }

    /// Builds `m` from position triples. Panics on out-of-range positions.
    pub fn from_index_triples<I>(x: &Carrier, triples: I) -> FrobCandidate
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let xx = x.product(x);
        let n = x.len();
        let m = Rel::from_index_pairs(&xx, x, triples.into_iter().map(|(h, g, f)| (h * n + g, f)));
        FrobCandidate { x: x.clone(), m }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.x
    }

    pub fn m(&self) -> &Rel {
        &self.m
    }

    /// Positions `f` with `((h,g),f) ∈ m`.
    pub fn products(&self, h: usize, g: usize) -> impl Iterator<Item = usize> + '_ {
        self.m.row(h * self.x.len() + g)
    }

    /// The product `hg` when `m` relates `(h,g)` to exactly one element.
    pub fn product_of(&self, h: usize, g: usize) -> Option<usize> {
        let mut it = self.products(h, g);
        match (it.next(), it.next()) {
            (Some(f), None) => Some(f),
            _ => None,
        }
    }

    pub fn defined(&self, h: usize, g: usize) -> bool {
        self.products(h, g).next().is_some()
    }

    /// `(h, g, f)` position triples of `m`.
    pub fn index_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.x.len();
        self.m.index_pairs().map(|(p, f)| (p / n, p % n, f)).collect()
    }

    pub fn triples(&self) -> Vec<(Atom, Atom, Atom)> {
        self.index_triples()
            .into_iter()
            .map(|(h, g, f)| (self.x.atom(h).clone(), self.x.atom(g).clone(), self.x.atom(f).clone()))
            .collect()
    }
}

/// Result of [`check_frobenius_axioms`].
#[derive(Debug, Clone)]
pub struct FrobCheck {
    pub report: Report,
    /// Positions of the unit set, when (U) holds.
    pub unit: Option<Vec<usize>>,
}

fn show_set(x: &Carrier, members: &[usize]) -> String {
    let parts: Vec<String> = members.iter().map(|&i| x.atom(i).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Evaluates (F), (M), (A) as equations between relations and searches for
/// the unit set of (U).
pub fn check_frobenius_axioms(c: &FrobCandidate, budget: &Budget) -> Result<FrobCheck, FrobError> {
    let x = &c.x;
    let n = x.len() as u128;
    budget.ensure("Frobenius relation algebra", n.pow(4))?;
    budget.ensure("unit search", 1u128 << x.len().min(127))?;

    let m = &c.m;
    let mdag = m.dagger();
    let id = Rel::identity(x);
    let mut report = Report::new();
    law_m(c, &mut report)?;
    law_a(c, &mut report)?;
    let alpha = Rel::associator(x, x, x);
    let one_m = id.product(m);
    let m_one = m.product(&id);

    // (F): (1×m)∘α∘(m†×1) = m†∘m = (m×1)∘α⁻¹∘(1×m†)
    let middle = m.then(&mdag)?;
    let f_left = mdag.product(&id).then(&alpha)?.then(&one_m)?;
    let f_right = id.product(&mdag).then(&alpha.dagger())?.then(&m_one)?;
    report.check("F", f_left == middle && f_right == middle, || {
        if f_left != middle {
            format!(
                "(1×m)∘α∘(m†×1) ≠ m†∘m: {}",
                f_left.difference_witness(&middle).unwrap_or_default()
            )
        } else {
            format!(
                "(m×1)∘α⁻¹∘(1×m†) ≠ m†∘m: {}",
                f_right.difference_witness(&middle).unwrap_or_default()
            )
        }
    });

    let lambda = Rel::left_unitor(x);
    let rho = Rel::right_unitor(x);
    let is_unit = |u: &[usize]| -> Result<bool, FrobError> {
        let u = Rel::subset(x, u);
        let left = lambda.then(&u.product(&id))?.then(m)?;
        if left != id {
            return Ok(false);
        }
        let right = rho.then(&id.product(&u))?.then(m)?;
        Ok(right == id)
    };
    let mut found: Vec<Vec<usize>> = Vec::new();
    for members in subsets_by_size(x.len()) {
        if is_unit(&members)? {
            found.push(members);
            if found.len() > 1 {
                break;
            }
        }
    }
    let unit = match found.len() {
        0 => {
            report.fail("U", "no subset U ⊆ X satisfies m∘(u×1) = 1 = m∘(1×u)");
            None
        }
        1 => {
            report.pass("U");
            found.pop()
        }
        _ => {
            report.fail(
                "U",
                format!(
                    "unit set not unique: {} and {}",
                    show_set(x, &found[0]),
                    show_set(x, &found[1])
                ),
            );
            None
        }
    };
    Ok(FrobCheck { report, unit })
}

/// (M): `m∘m† = 1`.
pub(crate) fn law_m(c: &FrobCandidate, report: &mut Report) -> Result<(), FrobError> {
    let id = Rel::identity(&c.x);
    let mm = c.m.dagger().then(&c.m)?;
    report.check("M", mm == id, || {
        format!("m∘m† ≠ 1: {}", mm.difference_witness(&id).unwrap_or_default())
    });
    Ok(())
}

/// (A): `m∘(1×m)∘α = m∘(m×1)`.
pub(crate) fn law_a(c: &FrobCandidate, report: &mut Report) -> Result<(), FrobError> {
    let (x, m) = (&c.x, &c.m);
    let id = Rel::identity(x);
    let lhs = Rel::associator(x, x, x).then(&id.product(m))?.then(m)?;
    let rhs = m.product(&id).then(m)?;
    report.check("A", lhs == rhs, || {
        format!(
            "m∘(1×m)∘α ≠ m∘(m×1): {}",
            lhs.difference_witness(&rhs).unwrap_or_default()
        )
    });
    Ok(())
}

/// All subsets of `{0..n}` ordered by size, then lexicographically.
pub fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| Combinations::new(n, k))
}

struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Boolean version of [`check_frobenius_axioms`] working directly on the
/// multiplication table. Returns as soon as one axiom fails.
pub fn frobenius_verdict(c: &FrobCandidate) -> bool {
    let n = c.x.len();
    // (M) holds iff m is single-valued and surjective.
    let mut table = vec![usize::MAX; n * n];
    let mut hit = vec![false; n];
    for p in 0..n * n {
        let mut it = c.m.row(p);
        if let Some(f) = it.next() {
            if it.next().is_some() {
                return false;
            }
            table[p] = f;
            hit[f] = true;
        }
    }
    if hit.iter().any(|&h| !h) {
        return false;
    }
    let mul = |h: usize, g: usize| -> Option<usize> {
        let f = table[h * n + g];
        (f != usize::MAX).then_some(f)
    };
    // (A), read on triples
    for h in 0..n {
        for g in 0..n {
            for f in 0..n {
                let l = mul(g, f).and_then(|gf| mul(h, gf));
                let r = mul(h, g).and_then(|hg| mul(hg, f));
                if l != r {
                    return false;
                }
            }
        }
    }
    // (F): (f,d) ↦ {(h, g·d) | hg = f} and (d,f) ↦ {(d·g, h) | gh = f}
    // must both equal {(p,q) | pq = fd}.
    for f in 0..n {
        for d in 0..n {
            let fd = mul(f, d);
            for p in 0..n {
                for q in 0..n {
                    let rhs = fd.is_some() && mul(p, q) == fd;
                    let left = (0..n).any(|g| mul(p, g) == Some(f) && mul(g, d) == Some(q));
                    let right = (0..n).any(|g| mul(g, q) == Some(d) && mul(f, g) == Some(p));
                    if left != rhs || right != rhs {
                        return false;
                    }
                }
            }
        }
    }
    // (U)
    let mut units = 0;
    for mask in 0u64..(1u64 << n) {
        let inside = |e: usize| mask >> e & 1 == 1;
        let ok = (0..n).all(|g| {
            let mut left = (0..n).filter(|&e| inside(e)).filter_map(|e| mul(e, g));
            let mut right = (0..n).filter(|&e| inside(e)).filter_map(|e| mul(g, e));
            left.next() == Some(g)
                && left.next().is_none()
                && right.next() == Some(g)
                && right.next().is_none()
        });
        if ok {
            units += 1;
        }
    }
    units == 1
}

/// A finite groupoid with dense arrow and object positions.
///
/// `compose[g * |G1| + f]` holds `g∘f`, defined for `s(g) = t(f)`.
#[derive(Clone)]
pub struct Groupoid {
    objects: Carrier,
    arrows: Carrier,
    source: Vec<usize>,
    target: Vec<usize>,
    unit: Vec<usize>,
    inverse: Vec<usize>,
    compose: Vec<Option<usize>>,
}

impl Groupoid {
    /// Checks only shapes and ranges; the axioms are left to
    /// [`check_groupoid_axioms`].
    pub fn from_tables<I>(
        objects: &Carrier,
        arrows: &Carrier,
        source: Vec<usize>,
        target: Vec<usize>,
        unit: Vec<usize>,
        inverse: Vec<usize>,
        compose: I,
    ) -> Result<Groupoid, FrobError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let (n0, n1) = (objects.len(), arrows.len());
        let bad = |what: &str| Err(FrobError::Malformed(what.to_string()));
        if source.len() != n1 || target.len() != n1 || inverse.len() != n1 {
            return bad("source, target and inverse must list every arrow");
        }
        if unit.len() != n0 {
            return bad("unit must list every object");
        }
        if source.iter().chain(&target).any(|&o| o >= n0) {
            return bad("source or target outside the objects");
        }
        if unit.iter().chain(&inverse).any(|&a| a >= n1) {
            return bad("unit or inverse outside the arrows");
        }
        let mut table = vec![None; n1 * n1];
        for (g, f, h) in compose {
            if g >= n1 || f >= n1 || h >= n1 {
                return bad("composition entry outside the arrows");
            }
            let slot = &mut table[g * n1 + f];
            match slot {
                Some(old) if *old != h => {
                    return Err(FrobError::Malformed(format!(
                        "composition of {} and {} given twice",
                        arrows.atom(g),
                        arrows.atom(f)
                    )))
                }
                _ => *slot = Some(h),
            }
        }
        Ok(Groupoid {
            objects: objects.clone(),
            arrows: arrows.clone(),
            source,
            target,
            unit,
            inverse,
            compose: table,
        })
    }

    /// A group as a one-object groupoid. `mul(g, f)` is `g∘f`.
    pub fn group(
        elements: &Carrier,
        identity: usize,
        mul: impl Fn(usize, usize) -> usize,
        inv: impl Fn(usize) -> usize,
    ) -> Groupoid {
        let n = elements.len();
        let compose: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|g| (0..n).map(move |f| (g, f)))
            .map(|(g, f)| (g, f, mul(g, f)))
            .collect();
        Groupoid::from_tables(
            &Carrier::point(),
            elements,
            vec![0; n],
            vec![0; n],
            vec![identity],
            (0..n).map(inv).collect(),
            compose,
        )
        .expect("group tables are in range")
    }

    /// ℤ/k with integer atoms `0..k`.
    pub fn cyclic(k: usize) -> Groupoid {
        Groupoid::group(&Carrier::range(k), 0, |a, b| (a + b) % k, |a| (k - a) % k)
    }

    /// The Klein four-group on `0..4` with `a∘b = a xor b`.
    pub fn klein() -> Groupoid {
        Groupoid::group(&Carrier::range(4), 0, |a, b| a ^ b, |a| a)
    }

    /// The pair groupoid: arrows `(x,y)` from `y` to `x`, `(x,y)∘(y,z) = (x,z)`.
    pub fn pair(objects: &Carrier) -> Groupoid {
        let k = objects.len();
        let arrows = objects.product(objects);
        let mut compose = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    compose.push((x * k + y, y * k + z, x * k + z));
                }
            }
        }
        Groupoid::from_tables(
            objects,
            &arrows,
            (0..k * k).map(|a| a % k).collect(),
            (0..k * k).map(|a| a / k).collect(),
            (0..k).map(|x| x * k + x).collect(),
            (0..k * k).map(|a| (a % k) * k + a / k).collect(),
            compose,
        )
        .expect("pair groupoid tables are in range")
    }

    /// Disjoint union; component `i` tags its atoms as `(i, atom)`.
    pub fn disjoint_union(parts: &[Groupoid]) -> Groupoid {
        let tag = |i: usize, a: &Atom| Atom::pair(Atom::Int(i as i64), a.clone());
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let (mut source, mut target, mut unit, mut inverse) = (vec![], vec![], vec![], vec![]);
        let mut compose = Vec::new();
        let (mut o_off, mut a_off) = (0, 0);
        for (i, g) in parts.iter().enumerate() {
            objects.extend(g.objects.atoms().iter().map(|a| tag(i, a)));
            arrows.extend(g.arrows.atoms().iter().map(|a| tag(i, a)));
            source.extend(g.source.iter().map(|&o| o + o_off));
            target.extend(g.target.iter().map(|&o| o + o_off));
            unit.extend(g.unit.iter().map(|&a| a + a_off));
            inverse.extend(g.inverse.iter().map(|&a| a + a_off));
            compose.extend(g.compositions().map(|(x, y, z)| (x + a_off, y + a_off, z + a_off)));
            o_off += g.objects.len();
            a_off += g.arrows.len();
        }
        Groupoid::from_tables(
            &Carrier::new(objects).expect("tags keep atoms distinct"),
            &Carrier::new(arrows).expect("tags keep atoms distinct"),
            source,
            target,
            unit,
            inverse,
            compose,
        )
        .expect("union of well-formed tables")
    }

    /// The empty groupoid.
    pub fn empty() -> Groupoid {
        Groupoid::disjoint_union(&[])
    }

    pub fn objects(&self) -> &Carrier {
        &self.objects
    }

    pub fn arrows(&self) -> &Carrier {
        &self.arrows
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `g∘f` if defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + f]
    }

    /// Defined compositions `(g, f, g∘f)`.
    pub fn compositions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.arrows.len();
        self.compose
            .iter()
            .enumerate()
            .filter_map(move |(i, h)| h.map(|h| (i / n, i % n, h)))
    }

    /// Replaces every object by the atom of its unit arrow.
    pub fn relabel_objects_by_units(&self) -> Groupoid {
        let objects = Carrier::new(self.unit.iter().map(|&u| self.arrows.atom(u).clone()))
            .expect("units of a valid groupoid are distinct");
        Groupoid {
            objects,
            ..self.clone()
        }
    }

    /// Replaces the inverse table; used to build broken structures.
    pub fn with_inverse(&self, inverse: Vec<usize>) -> Result<Groupoid, FrobError> {
        Groupoid::from_tables(
            &self.objects,
            &self.arrows,
            self.source.clone(),
            self.target.clone(),
            self.unit.clone(),
            inverse,
            self.compositions(),
        )
    }

    #[allow(clippy::type_complexity)]
    fn canonical(&self) -> (Vec<(Atom, Atom)>, Vec<(Atom, Atom, Atom, Atom)>, Vec<(Atom, Atom, Atom)>) {
        let a = |i: usize| self.arrows.atom(i).clone();
        let o = |i: usize| self.objects.atom(i).clone();
        let mut objs: Vec<_> = (0..self.objects.len()).map(|x| (o(x), a(self.unit[x]))).collect();
        let mut arrs: Vec<_> = (0..self.arrows.len())
            .map(|g| (a(g), o(self.source[g]), o(self.target[g]), a(self.inverse[g])))
            .collect();
        let mut comp: Vec<_> = self.compositions().map(|(g, f, h)| (a(g), a(f), a(h))).collect();
        objs.sort();
        arrs.sort();
        comp.sort();
        (objs, arrs, comp)
    }
}

impl PartialEq for Groupoid {
    /// Equality of all components as labelled sets, independent of carrier order.
    fn eq(&self, other: &Groupoid) -> bool {
        self.objects.len() == other.objects.len()
            && self.arrows.len() == other.arrows.len()
            && self.canonical() == other.canonical()
    }
}

impl Eq for Groupoid {}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (objs, arrs, comp) = self.canonical();
        f.debug_struct("Groupoid")
            .field("objects", &objs)
            .field("arrows", &arrs)
            .field("compose", &comp)
            .finish()
    }
}

/// Groupoid axioms A.1–A.6, in composition order (`g∘f` needs `s(g) = t(f)`).
pub fn check_groupoid_axioms(g: &Groupoid) -> Report {
    let mut r = Report::new();
    let a = |i: usize| g.arrows.atom(i).to_string();
    let o = |i: usize| g.objects.atom(i).to_string();
    let show = |h: Option<usize>| h.map_or("undefined".to_string(), a);
    let n = g.arrows.len();

    r.pass("A.1");
    for x in 0..g.objects.len() {
        let e = g.unit[x];
        if g.source[e] != x || g.target[e] != x {
            r.fail("A.1", format!("unit {} of {} has s={}, t={}", a(e), o(x), o(g.source[e]), o(g.target[e])));
        }
    }

    r.pass("A.2");
    for h in 0..n {
        for f in 0..n {
            let composable = g.source[h] == g.target[f];
            match (composable, g.compose(h, f)) {
                (true, None) => r.fail("A.2", format!("{}∘{} undefined on a composable pair", a(h), a(f))),
                (false, Some(_)) => r.fail("A.2", format!("{}∘{} defined on a non-composable pair", a(h), a(f))),
                (true, Some(hf)) => {
                    if g.source[hf] != g.source[f] || g.target[hf] != g.target[h] {
                        r.fail(
                            "A.2",
                            format!("{}∘{}={} runs {}→{}, expected {}→{}", a(h), a(f), a(hf),
                                o(g.source[hf]), o(g.target[hf]), o(g.source[f]), o(g.target[h])),
                        );
                    }
                }
                (false, None) => {}
            }
        }
    }

    r.pass("A.3");
    r.pass("A.4");
    r.pass("A.5");
    for f in 0..n {
        let right = g.compose(f, g.unit[g.source[f]]);
        let left = g.compose(g.unit[g.target[f]], f);
        if right != Some(f) || left != Some(f) {
            r.fail("A.3", format!("units do not fix {}: {}∘e(s)={}, e(t)∘{}={}", a(f), a(f), show(right), a(f), show(left)));
        }
        let fi = g.compose(f, g.inverse[f]);
        if fi != Some(g.unit[g.target[f]]) {
            r.fail("A.4", format!("{}∘{}⁻¹={}, expected {}", a(f), a(f), show(fi), a(g.unit[g.target[f]])));
        }
        let if_ = g.compose(g.inverse[f], f);
        if if_ != Some(g.unit[g.source[f]]) {
            r.fail("A.5", format!("{}⁻¹∘{}={}, expected {}", a(f), a(f), show(if_), a(g.unit[g.source[f]])));
        }
    }

    r.pass("A.6");
    for (h, k, hk) in g.compositions() {
        for f in 0..n {
            if let Some(kf) = g.compose(k, f) {
                let l = g.compose(hk, f);
                let rr = g.compose(h, kf);
                if l != rr {
                    r.fail("A.6", format!("({}∘{})∘{}={} but {}∘({}∘{})={}", a(h), a(k), a(f), show(l), a(h), a(k), a(f), show(rr)));
                }
            }
        }
    }
    r
}

/// Frobenius algebra of a groupoid: `X = G1`, `m` the graph of composition.
pub fn from_groupoid(g: &Groupoid) -> Result<FrobCandidate, FrobError> {
    let report = check_groupoid_axioms(g);
    if !report.verdict() {
        return Err(FrobError::InvalidGroupoid(Box::new(report)));
    }
    Ok(from_groupoid_unchecked(g))
}

pub(crate) fn from_groupoid_unchecked(g: &Groupoid) -> FrobCandidate {
    FrobCandidate::from_index_triples(g.arrows(), g.compositions())
}

/// Groupoid of a relative Frobenius algebra, with the unit set as objects.
pub fn to_groupoid(c: &FrobCandidate, budget: &Budget) -> Result<Groupoid, FrobError> {
    let check = check_frobenius_axioms(c, budget)?;
    let units = match (check.report.verdict(), check.unit) {
        (true, Some(u)) => u,
        _ => return Err(FrobError::NotFrobenius(Box::new(check.report))),
    };
    let x = &c.x;
    let n = x.len();
    let objects = Carrier::new(units.iter().map(|&u| x.atom(u).clone()))?;
    let unique = |it: &mut dyn Iterator<Item = usize>| -> Option<usize> {
        match (it.next(), it.next()) {
            (Some(v), None) => Some(v),
            _ => None,
        }
    };
    let mut source = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    for f in 0..n {
        let s = unique(&mut (0..units.len()).filter(|&k| c.defined(f, units[k])));
        let t = unique(&mut (0..units.len()).filter(|&k| c.defined(units[k], f)));
        match (s, t) {
            (Some(s), Some(t)) => {
                source.push(s);
                target.push(t);
            }
            _ => {
                return Err(FrobError::Malformed(format!(
                    "{} has no unique source or target unit",
                    x.atom(f)
                )))
            }
        }
    }
    let is_unit = |f: usize| units.contains(&f);
    let mut inverse = Vec::with_capacity(n);
    for f in 0..n {
        let inv = unique(&mut (0..n).filter(|&g| {
            c.product_of(g, f).is_some_and(is_unit) && c.product_of(f, g).is_some_and(is_unit)
        }));
        match inv {
            Some(g) => inverse.push(g),
            None => {
                return Err(FrobError::Malformed(format!("{} has no unique inverse", x.atom(f))))
            }
        }
    }
    let compose: Vec<_> = c
        .index_triples()
        .into_iter()
        .filter(|&(h, g, _)| source[h] == target[g])
        .collect();
    Groupoid::from_tables(&objects, x, source, target, units, inverse, compose)
}

/// Reads a groupoid off a multiplication table without consulting the
/// Frobenius axioms: objects are idempotents, source and target are the
/// idempotents that compose on the right and left. Fails when the table does
/// not determine that data uniquely.
pub fn assemble_groupoid(c: &FrobCandidate) -> Result<Groupoid, String> {
    let x = &c.x;
    let n = x.len();
    if !c.m.is_single_valued() {
        return Err("multiplication is not single-valued".into());
    }
    let idem: Vec<usize> = (0..n).filter(|&e| c.product_of(e, e) == Some(e)).collect();
    let pick = |cands: Vec<usize>, what: &str, f: usize| -> Result<usize, String> {
        if cands.len() == 1 {
            Ok(cands[0])
        } else {
            Err(format!("{} has {} {}", x.atom(f), cands.len(), what))
        }
    };
    let mut source = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    let mut inverse = Vec::with_capacity(n);
    for f in 0..n {
        source.push(pick(
            (0..idem.len()).filter(|&k| c.product_of(f, idem[k]) == Some(f)).collect(),
            "right identities",
            f,
        )?);
        target.push(pick(
            (0..idem.len()).filter(|&k| c.product_of(idem[k], f) == Some(f)).collect(),
            "left identities",
            f,
        )?);
    }
    for f in 0..n {
        inverse.push(pick(
            (0..n)
                .filter(|&g| {
                    c.product_of(f, g) == Some(idem[target[f]])
                        && c.product_of(g, f) == Some(idem[source[f]])
                })
                .collect(),
            "inverses",
            f,
        )?);
    }
    let objects = Carrier::new(idem.iter().map(|&e| x.atom(e).clone())).map_err(|e| e.to_string())?;
    Groupoid::from_tables(&objects, x, source, target, idem, inverse, c.index_triples())
        .map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismMode {
    /// Axiom (R): the pairs of `r` form a subgroupoid.
    Ext,
    /// Preserves multiplication and comultiplication.
    Frob,
    /// `Frob` whose restriction to units is a function.
    Func,
    /// Multi-valued functor between the induced groupoids.
    MFunc,
}

/// `(X×Y)×(X×Y) ↛ (X×X)×(Y×Y)`, `((a,b),(c,d)) ↦ ((a,c),(b,d))`.
fn middle_swap(x: &Carrier, y: &Carrier) -> Rel {
    let xy = x.product(y);
    let src = xy.product(&xy);
    let dst = x.product(x).product(&y.product(y));
    let (nx, ny) = (x.len(), y.len());
    let mut r = Rel::empty(&src, &dst);
    for a in 0..nx {
        for b in 0..ny {
            for c in 0..nx {
                for d in 0..ny {
                    let s = (a * ny + b) * (nx * ny) + c * ny + d;
                    let t = (a * nx + c) * (ny * ny) + b * ny + d;
                    r.insert(s, t);
                }
            }
        }
    }
    r
}

/// The pairs `(ac, bd)` for `(a,b), (c,d) ∈ r`, as `pt ↛ X×Y`.
pub(crate) fn closure_of_name(r: &Rel, mx: &FrobCandidate, my: &FrobCandidate) -> Result<Rel, FrobError> {
    let name = r.name();
    let pt = Carrier::point();
    let lhs = Rel::left_unitor(&pt)
        .then(&name.product(&name))?
        .then(&middle_swap(mx.carrier(), my.carrier()))?
        .then(&mx.m.product(&my.m))?;
    Ok(lhs)
}

/// Checks `r : X ↛ Y` against the defining equations of `mode`.
pub fn check_morphism(
    r: &Rel,
    mx: &FrobCandidate,
    my: &FrobCandidate,
    mode: MorphismMode,
    budget: &Budget,
) -> Result<Report, FrobError> {
    if r.src() != mx.carrier() || r.dst() != my.carrier() {
        return Err(RelError::CarrierMismatch {
            left: format!("{} ↛ {}", r.src(), r.dst()),
            right: format!("{} ↛ {}", mx.carrier(), my.carrier()),
        }
        .into());
    }
    let (nx, ny) = (mx.carrier().len() as u128, my.carrier().len() as u128);
    budget.ensure("morphism check", (nx * ny).pow(2))?;
    let mut report = Report::new();
    match mode {
        MorphismMode::Ext => {
            let lhs = closure_of_name(r, mx, my)?;
            let name = r.name();
            report.check("R", lhs == name, || {
                format!(
                    "(m×m)∘(1×σ×1)∘(⌜r⌝×⌜r⌝) ≠ ⌜r⌝: {}",
                    lhs.difference_witness(&name).unwrap_or_default()
                )
            });
        }
        MorphismMode::Frob | MorphismMode::Func => {
            frob_equations(r, mx, my, &mut report)?;
            if mode == MorphismMode::Func {
                let ux = unit_of(mx, budget)?;
                let uy = unit_of(my, budget)?;
                let mut bad = None;
                for &u in &ux {
                    let images: Vec<usize> = r.row(u).filter(|v| uy.contains(v)).collect();
                    if images.len() != 1 {
                        bad = Some(format!(
                            "unit {} has {} unit images",
                            mx.carrier().atom(u),
                            images.len()
                        ));
                        break;
                    }
                }
                report.check("func", bad.is_none(), || bad.unwrap_or_default());
            }
        }
        MorphismMode::MFunc => {
            let g = to_groupoid(mx, budget)?;
            let h = to_groupoid(my, budget)?;
            check_multivalued_functor(r, &g, &h, &mut report);
        }
    }
    Ok(report)
}

fn unit_of(c: &FrobCandidate, budget: &Budget) -> Result<Vec<usize>, FrobError> {
    let check = check_frobenius_axioms(c, budget)?;
    match (check.report.verdict(), check.unit) {
        (true, Some(u)) => Ok(u),
        _ => Err(FrobError::Precondition(format!(
            "endpoint is not Frobenius (failing: {})",
            check.report.failed_laws()
        ))),
    }
}

fn frob_equations(r: &Rel, mx: &FrobCandidate, my: &FrobCandidate, report: &mut Report) -> Result<(), FrobError> {
    let rr = r.product(r);
    let mult_l = mx.m.then(r)?;
    let mult_r = rr.then(&my.m)?;
    report.check("mult", mult_l == mult_r, || {
        format!(
            "r∘m_X ≠ m_Y∘(r×r): {}",
            mult_l.difference_witness(&mult_r).unwrap_or_default()
        )
    });
    let co_l = r.then(&my.m.dagger())?;
    let co_r = mx.m.dagger().then(&rr)?;
    report.check("comult", co_l == co_r, || {
        format!(
            "m_Y†∘r ≠ (r×r)∘m_X†: {}",
            co_l.difference_witness(&co_r).unwrap_or_default()
        )
    });
    Ok(())
}

/// `F` total on arrows, `F(g∘f) ⊆ F(g)∘F(f)`, and `F(e(x))` contains a unit.
fn check_multivalued_functor(r: &Rel, g: &Groupoid, h: &Groupoid, report: &mut Report) {
    let ga = |i: usize| g.arrows().atom(i).to_string();
    let total = (0..g.arrows().len()).find(|&i| r.row_len(i) == 0);
    report.check("total", total.is_none(), || {
        format!("{} has no image", ga(total.unwrap()))
    });
    report.pass("composition");
    'outer: for (a, b, ab) in g.compositions() {
        for y in r.row(ab) {
            let reached = r
                .row(a)
                .any(|ya| r.row(b).any(|yb| h.compose(ya, yb) == Some(y)));
            if !reached {
                report.fail(
                    "composition",
                    format!(
                        "{} ∈ F({}∘{}) is not in F({})∘F({})",
                        h.arrows().atom(y),
                        ga(a),
                        ga(b),
                        ga(a),
                        ga(b)
                    ),
                );
                break 'outer;
            }
        }
    }
    report.pass("identities");
    for x in 0..g.objects().len() {
        let e = g.unit(x);
        let hits_unit = r.row(e).any(|y| h.unit(h.source(y)) == y);
        if !hits_unit {
            report.fail("identities", format!("F({}) contains no identity", ga(e)));
            break;
        }
    }
}

/// The groupoid carried by the pairs of an (R)-morphism, multiplied
/// componentwise.
pub fn induced_subgroupoid(
    r: &Rel,
    mx: &FrobCandidate,
    my: &FrobCandidate,
    budget: &Budget,
) -> Result<Groupoid, FrobError> {
    let ext = check_morphism(r, mx, my, MorphismMode::Ext, budget)?;
    if !ext.verdict() {
        return Err(FrobError::Precondition(format!(
            "relation does not satisfy (R): {}",
            ext.witnesses()[0].detail
        )));
    }
    let pairs: Vec<(usize, usize)> = r.index_pairs().collect();
    let (x, y) = (mx.carrier(), my.carrier());
    let carrier = Carrier::new(
        pairs
            .iter()
            .map(|&(a, b)| Atom::pair(x.atom(a).clone(), y.atom(b).clone())),
    )?;
    let pos = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
    let mut triples = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            for ac in mx.products(a, c) {
                for bd in my.products(b, d) {
                    let k = pos(ac, bd).expect("(R) closes r under products");
                    triples.push((i, j, k));
                }
            }
        }
    }
    let mr = FrobCandidate::from_index_triples(&carrier, triples);
    to_groupoid(&mr, budget)
}

/// Every groupoid with at most `max_arrows` arrows, one per isomorphism class,
/// built as disjoint unions of the connected groupoids with at most 4 arrows.
pub fn small_groupoids(max_arrows: usize) -> Vec<(String, Groupoid)> {
    let ab = Carrier::new(["a", "b"]).expect("distinct");
    let parts: Vec<(&str, usize, Groupoid)> = vec![
        ("Z1", 1, Groupoid::cyclic(1)),
        ("Z2", 2, Groupoid::cyclic(2)),
        ("Z3", 3, Groupoid::cyclic(3)),
        ("Z4", 4, Groupoid::cyclic(4)),
        ("V4", 4, Groupoid::klein()),
        ("Pair2", 4, Groupoid::pair(&ab)),
    ];
    let mut out = Vec::new();
    // multisets of part indices in non-decreasing order
    fn go(
        parts: &[(&str, usize, Groupoid)],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(chosen.clone());
        for i in start..parts.len() {
            if parts[i].1 <= left {
                chosen.push(i);
                go(parts, i, left - parts[i].1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut combos = Vec::new();
    go(&parts, 0, max_arrows, &mut Vec::new(), &mut combos);
    for combo in combos {
        let name = if combo.is_empty() {
            "empty".to_string()
        } else {
            combo.iter().map(|&i| parts[i].0).collect::<Vec<_>>().join("+")
        };
        let gs: Vec<Groupoid> = combo.iter().map(|&i| parts[i].2.clone()).collect();
        let g = if gs.len() == 1 {
            gs[0].clone()
        } else {
            Groupoid::disjoint_union(&gs)
        };
        out.push((name, g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FrobCandidate {
        from_groupoid(&Groupoid::cyclic(2)).unwrap()
    }

    #[test]
    fn z2_addition_is_frobenius_with_unit_zero() {
        let c = z2();
        let chk = check_frobenius_axioms(&c, &Budget::default()).unwrap();
        assert!(chk.report.verdict(), "{:?}", chk.report);
        assert_eq!(chk.unit, Some(vec![0]));
        assert!(frobenius_verdict(&c));
    }

    #[test]
    fn total_relation_fails_m() {
        let x = Carrier::range(2);
        let c = FrobCandidate::from_index_triples(
            &x,
            (0..2).flat_map(|h| (0..2).flat_map(move |g| (0..2).map(move |f| (h, g, f)))),
        );
        let chk = check_frobenius_axioms(&c, &Budget::default()).unwrap();
        assert_eq!(chk.report.holds("M"), Some(false));
        assert!(chk.report.witnesses_for("M").next().is_some());
        assert!(!frobenius_verdict(&c));
    }

    #[test]
    fn pair_groupoid_round_trip() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let g = Groupoid::pair(&ab);
        assert!(check_groupoid_axioms(&g).verdict());
        let c = from_groupoid(&g).unwrap();
        assert_eq!(c.m().len(), 8);
        assert!(check_frobenius_axioms(&c, &Budget::default()).unwrap().report.verdict());
        let back = to_groupoid(&c, &Budget::default()).unwrap();
        let names: Vec<String> = back.objects().atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, vec!["(a,a)", "(b,b)"]);
        let ab_arrow = back.arrows().index_of(&"(a,b)".parse().unwrap()).unwrap();
        assert_eq!(back.objects().atom(back.source(ab_arrow)).to_string(), "(b,b)");
        assert_eq!(back, g.relabel_objects_by_units());
    }

    #[test]
    fn broken_inverse_is_caught() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let g = Groupoid::pair(&ab);
        let bad = g.with_inverse((0..4).collect()).unwrap();
        let r = check_groupoid_axioms(&bad);
        assert_eq!(r.holds("A.4"), Some(false));
        assert_eq!(r.holds("A.5"), Some(false));
        assert!(from_groupoid(&bad).is_err());
    }

    #[test]
    fn z3_cayley_graph() {
        let c = from_groupoid(&Groupoid::cyclic(3)).unwrap();
        for (h, g, f) in c.index_triples() {
            assert_eq!((h + g) % 3, f);
        }
        assert_eq!(c.m().len(), 9);
    }

    #[test]
    fn subsets_are_size_ordered() {
        let all: Vec<Vec<usize>> = subsets_by_size(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Vec::<usize>::new());
        assert_eq!(all[1], vec![0]);
        assert_eq!(all[4], vec![0, 1]);
        assert_eq!(all[7], vec![0, 1, 2]);
    }

    #[test]
    fn diagonal_and_empty_are_ext_morphisms() {
        let c = z2();
        let b = Budget::default();
        let diag = Rel::identity(c.carrier());
        assert!(check_morphism(&diag, &c, &c, MorphismMode::Ext, &b).unwrap().verdict());
        let empty = Rel::empty(c.carrier(), c.carrier());
        assert!(check_morphism(&empty, &c, &c, MorphismMode::Ext, &b).unwrap().verdict());
        let sub = induced_subgroupoid(&empty, &c, &c, &b).unwrap();
        assert_eq!(sub.arrows().len(), 0);
        let d = induced_subgroupoid(&diag, &c, &c, &b).unwrap();
        assert_eq!(d.arrows().len(), 2);
        assert!(check_groupoid_axioms(&d).verdict());
    }

    #[test]
    fn surjection_z4_to_z2_is_a_functor() {
        let b = Budget::default();
        let z4 = from_groupoid(&Groupoid::cyclic(4)).unwrap();
        let z2 = z2();
        let r = Rel::graph_of_indices(z4.carrier(), z2.carrier(), &[0, 1, 0, 1]);
        for mode in [MorphismMode::Ext, MorphismMode::Frob, MorphismMode::Func, MorphismMode::MFunc] {
            let rep = check_morphism(&r, &z4, &z2, mode, &b).unwrap();
            assert!(rep.verdict(), "{mode:?}: {rep:?}");
        }
        let sub = induced_subgroupoid(&r, &z4, &z2, &b).unwrap();
        assert_eq!(sub.arrows().len(), 4);
    }

    #[test]
    fn catalog_is_valid() {
        let cat = small_groupoids(4);
        // partitions into parts: 1 empty, sizes built from Z1..Pair2
        assert!(cat.len() > 10);
        for (name, g) in &cat {
            assert!(g.arrows().len() <= 4, "{name}");
            assert!(check_groupoid_axioms(g).verdict(), "{name}");
        }
    }
}
