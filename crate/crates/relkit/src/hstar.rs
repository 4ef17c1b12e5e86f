//! Relative H*-algebras and locally cancellative regular semigroupoids.

use std::fmt;

use crate::atom::Atom;
use crate::finrel::{Budget, Carrier, Rel};
use crate::frobenius::{closure_of_name, law_a, law_m, FrobCandidate, FrobError, Groupoid};
use crate::report::Report;

/// Same shape as a Frobenius candidate: a carrier and `m : X×X ↛ X`.
pub type HStarCandidate = FrobCandidate;

fn outputs_of(c: &HStarCandidate, left: &[usize], g: usize) -> Vec<usize> {
    let mut out: Vec<usize> = left.iter().flat_map(|&h| c.products(h, g)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `x·y·z` evaluated left to right through `m`, as a set of positions.
fn triple(c: &HStarCandidate, x: usize, y: usize, z: usize) -> Vec<usize> {
    let xy: Vec<usize> = c.products(x, y).collect();
    outputs_of(c, &xy, z)
}

/// `b` is a pseudoinverse of `a`: `bab = b` and `aba = a`.
pub fn is_pseudoinverse(c: &HStarCandidate, b: usize, a: usize) -> bool {
    triple(c, b, a, b) == [b] && triple(c, a, b, a) == [a]
}

/// Elements that are pseudoinverses of every member of `a`.
pub fn star_set(c: &HStarCandidate, a: &[usize]) -> Vec<usize> {
    (0..c.carrier().len())
        .filter(|&b| a.iter().all(|&x| is_pseudoinverse(c, b, x)))
        .collect()
}

/// Union of the pseudoinverse sets of the members of `a`; the involution
/// used by the (H) check.
fn star_union(stars: &[Vec<usize>], a: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().flat_map(|&x| stars[x].iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn show(x: &Carrier, s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|&i| x.atom(i).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// (M), (A) and (H).
///
/// (H) is checked for every subset `A` with `A*` the union of the
/// pseudoinverse sets of its members, read element-wise:
/// `∃b∈A*: ub = v ⇔ ∃q∈A: vq = u` and `∃b∈A*: bu = v ⇔ ∃q∈A: qv = u`.
pub fn check_hstar_axioms(c: &HStarCandidate, budget: &Budget) -> Result<Report, FrobError> {
    let x = c.carrier();
    let n = x.len();
    budget.ensure("H* subset enumeration", (1u128 << n.min(100)) * (n as u128).pow(3))?;
    let mut report = Report::new();
    law_m(c, &mut report)?;
    law_a(c, &mut report)?;

    let stars: Vec<Vec<usize>> = (0..n).map(|a| star_set(c, &[a])).collect();
    let has = |u: usize, b: usize, v: usize| c.products(u, b).any(|w| w == v);
    report.pass("H");
    let mut involutive = true;
    let mut first_non_involutive = None;
    'subsets: for mask in 0u128..(1u128 << n) {
        let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let a_star = star_union(&stars, &a);
        if involutive {
            let back = star_union(&stars, &a_star);
            if back != a {
                involutive = false;
                first_non_involutive = Some((a.clone(), back));
            }
        }
        for u in 0..n {
            for v in 0..n {
                let l1 = a_star.iter().any(|&b| has(u, b, v));
                let r1 = a.iter().any(|&q| has(v, q, u));
                let l2 = a_star.iter().any(|&b| has(b, u, v));
                let r2 = a.iter().any(|&q| has(q, v, u));
                if l1 != r1 || l2 != r2 {
                    let (side, lhs) = if l1 != r1 {
                        (format!("∃b∈A*: {}b={}", x.atom(u), x.atom(v)), l1)
                    } else {
                        (format!("∃b∈A*: b{}={}", x.atom(u), x.atom(v)), l2)
                    };
                    report.fail(
                        "H",
                        format!(
                            "A={}, A*={}: \"{}\" is {} but its counterpart is {}",
                            show(x, &a),
                            show(x, &a_star),
                            side,
                            lhs,
                            !lhs
                        ),
                    );
                    break 'subsets;
                }
            }
        }
    }
    match first_non_involutive {
        None => report.note("star is an involution on all subsets"),
        Some((a, back)) => report.note(format!(
            "star is not an involution: A={} gives A**={}",
            show(x, &a),
            show(x, &back)
        )),
    }
    let contains = (0..n).all(|i| star_union(&stars, &stars[i]).contains(&i) || stars[i].is_empty());
    report.note(if contains {
        "every element with a pseudoinverse lies in its double star"
    } else {
        "some element is missing from its double star"
    });
    Ok(report)
}

/// A finite semigroupoid: `compose[g * |G1| + f]` is `g∘f`.
#[derive(Clone)]
pub struct Semigroupoid {
    objects: Carrier,
    arrows: Carrier,
    source: Vec<usize>,
    target: Vec<usize>,
    compose: Vec<Option<usize>>,
}

impl Semigroupoid {
    pub fn from_tables<I>(
        objects: &Carrier,
        arrows: &Carrier,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: I,
    ) -> Result<Semigroupoid, FrobError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let (n0, n1) = (objects.len(), arrows.len());
        if source.len() != n1 || target.len() != n1 {
            return Err(FrobError::Malformed("source and target must list every arrow".into()));
        }
        if source.iter().chain(&target).any(|&o| o >= n0) {
            return Err(FrobError::Malformed("source or target outside the objects".into()));
        }
        let mut table = vec![None; n1 * n1];
        for (g, f, h) in compose {
            if g >= n1 || f >= n1 || h >= n1 {
                return Err(FrobError::Malformed("composition entry outside the arrows".into()));
            }
            match table[g * n1 + f] {
                Some(old) if old != h => {
                    return Err(FrobError::Malformed(format!(
                        "composition of {} and {} given twice",
                        arrows.atom(g),
                        arrows.atom(f)
                    )))
                }
                _ => table[g * n1 + f] = Some(h),
            }
        }
        Ok(Semigroupoid {
            objects: objects.clone(),
            arrows: arrows.clone(),
            source,
            target,
            compose: table,
        })
    }

    /// Forgets units and inverses.
    pub fn from_groupoid(g: &Groupoid) -> Semigroupoid {
        let n = g.arrows().len();
        Semigroupoid::from_tables(
            g.objects(),
            g.arrows(),
            (0..n).map(|a| g.source(a)).collect(),
            (0..n).map(|a| g.target(a)).collect(),
            g.compositions(),
        )
        .expect("groupoid tables are well formed")
    }

    /// A semigroup as a one-object semigroupoid.
    pub fn semigroup(elements: &Carrier, mul: impl Fn(usize, usize) -> usize) -> Semigroupoid {
        let n = elements.len();
        let compose: Vec<_> = (0..n)
            .flat_map(|g| (0..n).map(move |f| (g, f)))
            .map(|(g, f)| (g, f, mul(g, f)))
            .collect();
        Semigroupoid::from_tables(&Carrier::point(), elements, vec![0; n], vec![0; n], compose)
            .expect("semigroup tables are in range")
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

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + f]
    }

    pub fn compositions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.arrows.len();
        self.compose
            .iter()
            .enumerate()
            .filter_map(move |(i, h)| h.map(|h| (i / n, i % n, h)))
    }

    fn compose3(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        self.compose(a, b).and_then(|ab| self.compose(ab, c))
    }

    /// Pseudoinverses of `f`: `f*∘f∘f* = f*` and `f∘f*∘f = f`.
    pub fn pseudoinverses(&self, f: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&b| self.compose3(b, f, b) == Some(b) && self.compose3(f, b, f) == Some(f))
            .collect()
    }

    #[allow(clippy::type_complexity)]
    fn canonical(&self) -> (Vec<Atom>, Vec<(Atom, Atom, Atom)>, Vec<(Atom, Atom, Atom)>) {
        let a = |i: usize| self.arrows.atom(i).clone();
        let o = |i: usize| self.objects.atom(i).clone();
        let mut objs: Vec<_> = self.objects.atoms().to_vec();
        let mut arrs: Vec<_> = (0..self.arrows.len())
            .map(|g| (a(g), o(self.source[g]), o(self.target[g])))
            .collect();
        let mut comp: Vec<_> = self.compositions().map(|(g, f, h)| (a(g), a(f), a(h))).collect();
        objs.sort();
        arrs.sort();
        comp.sort();
        (objs, arrs, comp)
    }
}

impl PartialEq for Semigroupoid {
    fn eq(&self, other: &Semigroupoid) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for Semigroupoid {}

impl fmt::Debug for Semigroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (objs, arrs, comp) = self.canonical();
        f.debug_struct("Semigroupoid")
            .field("objects", &objs)
            .field("arrows", &arrs)
            .field("compose", &comp)
            .finish()
    }
}

/// Laws `composition`, `associative`, `regular`, `locally_cancellative`.
pub fn check_semigroupoid_properties(s: &Semigroupoid) -> Report {
    let mut r = Report::new();
    let n = s.arrows.len();
    let a = |i: usize| s.arrows.atom(i).to_string();

    r.pass("composition");
    'comp: for g in 0..n {
        for f in 0..n {
            let composable = s.source[g] == s.target[f];
            let ok = match s.compose(g, f) {
                None => !composable,
                Some(gf) => composable && s.source[gf] == s.source[f] && s.target[gf] == s.target[g],
            };
            if !ok {
                r.fail("composition", format!("{}∘{} disagrees with source/target", a(g), a(f)));
                break 'comp;
            }
        }
    }

    r.pass("associative");
    'assoc: for (h, g, hg) in s.compositions() {
        for f in 0..n {
            if let Some(gf) = s.compose(g, f) {
                let (l, rr) = (s.compose(hg, f), s.compose(h, gf));
                if l != rr {
                    r.fail("associative", format!("({}∘{})∘{} ≠ {}∘({}∘{})", a(h), a(g), a(f), a(h), a(g), a(f)));
                    break 'assoc;
                }
            }
        }
    }

    let pinv: Vec<Vec<usize>> = (0..n).map(|f| s.pseudoinverses(f)).collect();
    let lonely = (0..n).find(|&f| pinv[f].is_empty());
    r.check("regular", lonely.is_none(), || {
        format!("{} has no pseudoinverse", a(lonely.unwrap()))
    });

    r.pass("locally_cancellative");
    'lc: for f in 0..n {
        for h in 0..n {
            for &hs in &pinv[h] {
                let Some(fhh) = s.compose3(f, h, hs) else { continue };
                for g in 0..n {
                    if s.compose(g, hs) == Some(fhh) && s.compose(f, h) != Some(g) {
                        r.fail(
                            "locally_cancellative",
                            format!(
                                "f={}, h={}, h*={}, g={}: fhh* = gh* but fh ≠ g",
                                a(f),
                                a(h),
                                a(hs),
                                a(g)
                            ),
                        );
                        break 'lc;
                    }
                }
            }
        }
    }
    r
}

/// Idempotents as objects, `s(f) = f*f`, `t(f) = ff*`, composition restricted
/// to `s(g) = t(f)`.
pub fn to_semigroupoid(c: &HStarCandidate, budget: &Budget) -> Result<Semigroupoid, FrobError> {
    let report = check_hstar_axioms(c, budget)?;
    if !report.verdict() {
        return Err(FrobError::Precondition(format!(
            "not a relative H*-algebra (failing: {})",
            report.failed_laws()
        )));
    }
    let x = c.carrier();
    let n = x.len();
    let idem: Vec<usize> = (0..n).filter(|&e| c.product_of(e, e) == Some(e)).collect();
    let obj_of = |e: usize| idem.iter().position(|&i| i == e);
    let mut source = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    for f in 0..n {
        let stars = star_set(c, &[f]);
        let mut s_val: Option<(usize, usize)> = None;
        let mut t_val: Option<(usize, usize)> = None;
        for &fs in &stars {
            let (Some(sf), Some(tf)) = (c.product_of(fs, f), c.product_of(f, fs)) else {
                return Err(FrobError::Malformed(format!("{}*{} is not a single product", x.atom(fs), x.atom(f))));
            };
            for (slot, val, what) in [(&mut s_val, sf, "source"), (&mut t_val, tf, "target")] {
                match slot {
                    Some((old_star, old)) if *old != val => {
                        return Err(FrobError::Malformed(format!(
                            "{} of {} is ill-defined: pseudoinverses {} and {} disagree",
                            what,
                            x.atom(f),
                            x.atom(*old_star),
                            x.atom(fs)
                        )))
                    }
                    None => *slot = Some((fs, val)),
                    _ => {}
                }
            }
        }
        let (Some((_, sf)), Some((_, tf))) = (s_val, t_val) else {
            return Err(FrobError::Malformed(format!("{} has no pseudoinverse", x.atom(f))));
        };
        match (obj_of(sf), obj_of(tf)) {
            (Some(so), Some(to)) => {
                source.push(so);
                target.push(to);
            }
            _ => return Err(FrobError::Malformed(format!("source or target of {} is not idempotent", x.atom(f)))),
        }
    }
    let mut compose = Vec::new();
    for g in 0..n {
        for f in 0..n {
            if source[g] == target[f] {
                match c.product_of(g, f) {
                    Some(gf) => compose.push((g, f, gf)),
                    None => {
                        return Err(FrobError::Malformed(format!(
                            "{}{} is not a single product",
                            x.atom(g),
                            x.atom(f)
                        )))
                    }
                }
            }
        }
    }
    let objects = Carrier::new(idem.iter().map(|&e| x.atom(e).clone()))?;
    Semigroupoid::from_tables(&objects, x, source, target, compose)
}

/// `X = G1` with `m` the graph of composition.
pub fn from_semigroupoid(s: &Semigroupoid) -> Result<HStarCandidate, FrobError> {
    let report = check_semigroupoid_properties(s);
    if !report.verdict() {
        return Err(FrobError::Precondition(format!(
            "semigroupoid is not a locally cancellative regular semigroupoid (failing: {})",
            report.failed_laws()
        )));
    }
    Ok(FrobCandidate::from_index_triples(s.arrows(), s.compositions()))
}

/// Instance-level check of the adjunction between H*-algebras and locally
/// cancellative regular semigroupoids.
pub fn adjunction_check(c: &HStarCandidate, budget: &Budget) -> Result<Report, FrobError> {
    let s1 = to_semigroupoid(c, budget)?;
    let m1 = from_semigroupoid(&s1)?;
    let x = c.carrier();
    let n = x.len();
    let mut r = Report::new();

    let pinv: Vec<Vec<usize>> = (0..n).map(|f| star_set(c, &[f])).collect();
    let mut unit_triples = Vec::new();
    for g in 0..n {
        for f in 0..n {
            let witnessed = pinv[g]
                .iter()
                .any(|&gs| pinv[f].iter().any(|&fs| {
                    let gg = c.product_of(gs, g);
                    gg.is_some() && gg == c.product_of(f, fs)
                }));
            if witnessed {
                for gf in c.products(g, f) {
                    unit_triples.push((g, f, gf));
                }
            }
        }
    }
    let unit = FrobCandidate::from_index_triples(x, unit_triples);
    let sub = unit.m().is_subset(c.m())?;
    r.check("unit_subrelation", sub, || {
        format!(
            "unit relation leaves m: {}",
            unit.m().difference_witness(c.m()).unwrap_or_default()
        )
    });
    r.check("unit_is_from_to", unit.m() == m1.m(), || {
        format!(
            "unit relation ≠ from(to(m)): {}",
            unit.m().difference_witness(m1.m()).unwrap_or_default()
        )
    });

    // the unit component is the diagonal m1 → m; it must satisfy (R)
    let diag = Rel::identity(x);
    let closure = closure_of_name(&diag, &m1, c)?;
    r.check("unit_R", closure == diag.name(), || {
        format!(
            "diagonal from(to(m)) → m violates (R): {}",
            closure.difference_witness(&diag.name()).unwrap_or_default()
        )
    });

    // counit at S1 compares to(from(S1)) with S1 along the diagonal
    let s2 = to_semigroupoid(&m1, budget)?;
    r.check("counit", s2 == s1, || {
        "to(from(to(m))) differs from to(m)".to_string()
    });

    // both triangle composites are composites of diagonals
    let tri1 = diag.then(&diag)?;
    r.check("triangle_left", tri1 == diag && s2 == s1, || {
        "counit∘to(unit) is not the identity".to_string()
    });
    let tri2 = diag.then(&diag)?;
    r.check("triangle_right", tri2 == diag && m1 == from_semigroupoid(&s2)?, || {
        "from(counit)∘unit is not the identity".to_string()
    });
    Ok(r)
}

/// The `rows × cols` rectangular band `(i,j)(k,l) = (i,l)` on atoms `(i,j)`,
/// indices starting at 1.
pub fn rectangular_band(rows: usize, cols: usize) -> HStarCandidate {
    let atoms: Vec<Atom> = (1..=rows as i64)
        .flat_map(|i| (1..=cols as i64).map(move |j| Atom::pair(i.into(), j.into())))
        .collect();
    let x = Carrier::new(atoms).expect("distinct pairs");
    let n = rows * cols;
    let triples = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, (a / cols) * cols + b % cols)));
    FrobCandidate::from_index_triples(&x, triples)
}

/// `{0, a}` with every product equal to `0`.
pub fn null_semigroup() -> Semigroupoid {
    let x = Carrier::new(["0", "a"]).expect("distinct");
    Semigroupoid::semigroup(&x, |_, _| 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::from_groupoid;

    fn z3() -> HStarCandidate {
        from_groupoid(&Groupoid::cyclic(3)).unwrap()
    }

    #[test]
    fn star_sets() {
        let c = z3();
        assert_eq!(star_set(&c, &[1]), vec![2]);
        assert_eq!(star_set(&c, &[]), vec![0, 1, 2]);
        let band = rectangular_band(2, 2);
        assert_eq!(star_set(&band, &[0]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn group_is_hstar_and_band_is_not() {
        let b = Budget::default();
        let r = check_hstar_axioms(&z3(), &b).unwrap();
        assert!(r.verdict(), "{r:?}");
        let band = check_hstar_axioms(&rectangular_band(2, 2), &b).unwrap();
        assert_eq!(band.holds("M"), Some(true));
        assert_eq!(band.holds("A"), Some(true));
        assert_eq!(band.holds("H"), Some(false));
        assert!(to_semigroupoid(&rectangular_band(2, 2), &b).is_err());
        assert!(adjunction_check(&rectangular_band(2, 2), &b).is_err());
    }

    #[test]
    fn group_semigroupoid_has_one_object() {
        let s = to_semigroupoid(&z3(), &Budget::default()).unwrap();
        assert_eq!(s.objects().len(), 1);
        assert_eq!(s.objects().atom(0), &Atom::Int(0));
        assert!(check_semigroupoid_properties(&s).verdict());
    }

    #[test]
    fn band_is_regular_but_not_cancellative() {
        let band = rectangular_band(2, 2);
        let s = Semigroupoid::semigroup(band.carrier(), |a, b| band.product_of(a, b).unwrap());
        let r = check_semigroupoid_properties(&s);
        assert_eq!(r.holds("regular"), Some(true));
        assert_eq!(r.holds("locally_cancellative"), Some(false));
        // the quadruple f=(1,1), h=(1,1), h*=(1,2), g=(1,2) violates cancellation
        let (f, h, hs, g) = (0, 0, 1, 1);
        assert!(s.pseudoinverses(h).contains(&hs));
        assert_eq!(s.compose3(f, h, hs), s.compose(g, hs));
        assert_ne!(s.compose(f, h), Some(g));
    }

    #[test]
    fn null_semigroup_is_not_regular() {
        let s = null_semigroup();
        let r = check_semigroupoid_properties(&s);
        assert_eq!(r.holds("regular"), Some(false));
        assert!(from_semigroupoid(&s).is_err());
    }

    #[test]
    fn single_idempotent() {
        let x = Carrier::new(["e"]).unwrap();
        let s = Semigroupoid::semigroup(&x, |_, _| 0);
        let m = from_semigroupoid(&s).unwrap();
        assert_eq!(m.triples(), vec![("e".into(), "e".into(), "e".into())]);
    }

    #[test]
    fn adjunction_on_groups() {
        let r = adjunction_check(&z3(), &Budget::default()).unwrap();
        assert!(r.verdict(), "{r:?}");
    }
}
