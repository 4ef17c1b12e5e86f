use super::{GpdRelation, LinearCandidate, RelGpdError, RelGroupoidCandidate, SetCandidate};
use crate::finrel::{Carrier, Rel};
use crate::frobenius::{check_groupoid_axioms, Groupoid};
use crate::symplin::matrix::{q, Matrix};
use crate::symplin::{SympSpace, Subspace};

/// Parameters for [`build_example`].
#[derive(Clone, Debug)]
pub enum Example {
    /// `L = {(g, f, (g∘f)⁻¹)}` over composable pairs, `I` the inverse.
    FromGroupoid(Groupoid),
    /// The pair groupoid of `V` in linear mode: `G = V⊕V̄`,
    /// `L = {((x,y),(y,z),(z,x))}`, `I(x,y) = (y,x)`.
    LinearPairGroupoid(SympSpace),
    /// `L = 𝓛³` for a subset `𝓛` with `I(𝓛) = 𝓛`.
    LagrangianTripleSet {
        carrier: Carrier,
        inv: Vec<usize>,
        lagrangian: Vec<usize>,
    },
    /// `L = 𝓛³` for a Lagrangian `𝓛` with `φ(𝓛) = 𝓛`.
    LagrangianTriple {
        space: SympSpace,
        phi: Matrix,
        lagrangian: Subspace,
    },
    /// `(G^n, L^n, I^n)`, componentwise.
    Power(Box<RelGroupoidCandidate>, usize),
    /// ℤ/k with `L = {(n, m, −n−m−1)}` and `I(n) = −n`; needs `k ≥ 3`.
    CyclicCounterexample(usize),
    /// ℤ/2N with `L = {(n,m,q) | n+m+q odd}` and `I(n) = −n`. The
    /// parameter is the modulus `2N`.
    Parity(usize),
}

pub fn build_example(kind: Example) -> Result<RelGroupoidCandidate, RelGpdError> {
    match kind {
        Example::FromGroupoid(g) => from_groupoid(&g),
        Example::LinearPairGroupoid(v) => Ok(linear_pair_groupoid(&v)),
        Example::LagrangianTripleSet {
            carrier,
            inv,
            lagrangian,
        } => lagrangian_triple_set(&carrier, inv, &lagrangian),
        Example::LagrangianTriple {
            space,
            phi,
            lagrangian,
        } => lagrangian_triple(&space, phi, &lagrangian),
        Example::Power(c, n) => power(&c, n),
        Example::CyclicCounterexample(k) => cyclic_counterexample(k),
        Example::Parity(m) => parity(m),
    }
}

fn from_groupoid(g: &Groupoid) -> Result<RelGroupoidCandidate, RelGpdError> {
    let report = check_groupoid_axioms(g);
    if !report.verdict() {
        return Err(RelGpdError::Precondition(Box::new(report)));
    }
    let triples = g.compositions().map(|(a, b, c)| (a, b, g.inverse(c)));
    let inv = (0..g.arrows().len()).map(|a| g.inverse(a)).collect();
    Ok(RelGroupoidCandidate::Set(SetCandidate::from_indices(g.arrows(), triples, inv)))
}

fn linear_pair_groupoid(v: &SympSpace) -> RelGroupoidCandidate {
    let d = v.dim();
    let g = v.direct_sum(&v.conjugate());
    // columns are the images of the basis of V³ ∋ (x,y,z)
    let mut cols = Vec::new();
    for which in 0..3 {
        for i in 0..d {
            let mut col = vec![q(0); 6 * d];
            // slots: (x,y) (y,z) (z,x), each block of length d
            let slots: [usize; 2] = match which {
                0 => [0, 5],
                1 => [1, 2],
                _ => [3, 4],
            };
            for s in slots {
                col[s * d + i] = q(1);
            }
            cols.push(col);
        }
    }
    let l = Subspace::span(6 * d, &cols);
    let id = Matrix::identity(d);
    let z = Matrix::zeros(d, d);
    let swap = z.hstack(&id).vstack(&id.hstack(&z));
    RelGroupoidCandidate::Linear(LinearCandidate::new(&g, l, swap).expect("swap is antisymplectic on V⊕V̄"))
}

fn lagrangian_triple_set(g: &Carrier, inv: Vec<usize>, sub: &[usize]) -> Result<RelGroupoidCandidate, RelGpdError> {
    if inv.len() != g.len() || inv.iter().any(|&j| j >= g.len()) {
        return Err(RelGpdError::Param("I must be a total map on the carrier".into()));
    }
    if sub.iter().any(|&x| x >= g.len()) {
        return Err(RelGpdError::Param("subset outside the carrier".into()));
    }
    if let Some(&x) = sub.iter().find(|&&x| !sub.contains(&inv[x])) {
        return Err(RelGpdError::Param(format!("I({}) leaves the subset", g.atom(x))));
    }
    let triples = sub
        .iter()
        .flat_map(|&x| sub.iter().flat_map(move |&y| sub.iter().map(move |&z| (x, y, z))));
    Ok(RelGroupoidCandidate::Set(SetCandidate::from_indices(g, triples, inv)))
}

fn lagrangian_triple(v: &SympSpace, phi: Matrix, sub: &Subspace) -> Result<RelGroupoidCandidate, RelGpdError> {
    if !v.is_lagrangian(sub)? {
        return Err(RelGpdError::Param("subspace is not Lagrangian".into()));
    }
    if phi.rows() != v.dim() || phi.cols() != v.dim() {
        return Err(RelGpdError::Param("φ has the wrong size".into()));
    }
    if &sub.image(&phi) != sub {
        return Err(RelGpdError::Param("φ does not preserve the Lagrangian".into()));
    }
    let d = v.dim();
    let mut cols = Vec::new();
    for block in 0..3 {
        for b in sub.basis_vectors() {
            let mut col = vec![q(0); 3 * d];
            col[block * d..(block + 1) * d].clone_from_slice(&b);
            cols.push(col);
        }
    }
    let l = Subspace::span(3 * d, &cols);
    Ok(RelGroupoidCandidate::Linear(LinearCandidate::new(v, l, phi)?))
}

/// `G^n` as the left-nested product `((G×G)×G)…`.
pub fn power_carrier(g: &Carrier, n: usize) -> Carrier {
    let mut out = g.clone();
    for _ in 1..n {
        out = out.product(g);
    }
    out
}

fn power(c: &RelGroupoidCandidate, n: usize) -> Result<RelGroupoidCandidate, RelGpdError> {
    if n == 0 {
        return Err(RelGpdError::Param("power needs n ≥ 1".into()));
    }
    match c {
        RelGroupoidCandidate::Set(c) => {
            let g = c.carrier();
            let k = g.len();
            let gn = power_carrier(g, n);
            let base = c.index_triples();
            let mut triples = vec![(0usize, 0usize, 0usize)];
            for _ in 0..n {
                let mut next = Vec::with_capacity(triples.len() * base.len());
                for &(x, y, z) in &triples {
                    for &(a, b, d) in &base {
                        next.push((x * k + a, y * k + b, z * k + d));
                    }
                }
                triples = next;
            }
            let inv = (0..gn.len())
                .map(|mut t| {
                    let mut digits = Vec::with_capacity(n);
                    for _ in 0..n {
                        digits.push(t % k);
                        t /= k;
                    }
                    digits.iter().rev().fold(0, |acc, &dg| acc * k + c.inv()[dg])
                })
                .collect();
            Ok(RelGroupoidCandidate::Set(SetCandidate::from_indices(&gn, triples, inv)))
        }
        RelGroupoidCandidate::Linear(c) => {
            let g = c.space();
            let d = g.dim();
            let mut gn = g.clone();
            let mut inv = c.inv().clone();
            for _ in 1..n {
                gn = gn.direct_sum(g);
                inv = inv.block_diag(c.inv());
            }
            let total = n * d;
            let mut cols = Vec::new();
            for j in 0..n {
                for b in c.l().basis_vectors() {
                    let mut col = vec![q(0); 3 * total];
                    for slot in 0..3 {
                        let from = &b[slot * d..(slot + 1) * d];
                        let at = slot * total + j * d;
                        col[at..at + d].clone_from_slice(from);
                    }
                    cols.push(col);
                }
            }
            let l = Subspace::span(3 * total, &cols);
            Ok(RelGroupoidCandidate::Linear(LinearCandidate::new(&gn, l, inv)?))
        }
    }
}

fn cyclic_counterexample(k: usize) -> Result<RelGroupoidCandidate, RelGpdError> {
    if k < 3 {
        return Err(RelGpdError::Param(format!("cyclic counterexample needs k ≥ 3, got {k}")));
    }
    let g = Carrier::range(k);
    let triples = (0..k).flat_map(|n| (0..k).map(move |m| (n, m, (3 * k - n - m - 1) % k)));
    let inv = (0..k).map(|n| (k - n) % k).collect();
    Ok(RelGroupoidCandidate::Set(SetCandidate::from_indices(&g, triples, inv)))
}

fn parity(modulus: usize) -> Result<RelGroupoidCandidate, RelGpdError> {
    if modulus < 2 || modulus % 2 != 0 {
        return Err(RelGpdError::Param(format!("parity example needs an even modulus, got {modulus}")));
    }
    let g = Carrier::range(modulus);
    let triples = (0..modulus).flat_map(|n| {
        (0..modulus).flat_map(move |m| (0..modulus).filter(move |q| (n + m + q) % 2 == 1).map(move |q| (n, m, q)))
    });
    let inv = (0..modulus).map(|n| (modulus - n) % modulus).collect();
    Ok(RelGroupoidCandidate::Set(SetCandidate::from_indices(&g, triples, inv)))
}

/// The diagonal `G ↛ G^n`, `g ↦ (g,…,g)`.
pub fn diagonal_into_power(c: &RelGroupoidCandidate, n: usize) -> GpdRelation {
    match c {
        RelGroupoidCandidate::Set(c) => {
            let g = c.carrier();
            let k = g.len();
            let gn = power_carrier(g, n);
            let pairs = (0..k).map(|x| (x, (0..n).fold(0, |acc, _| acc * k + x)));
            GpdRelation::Set(Rel::from_index_pairs(g, &gn, pairs))
        }
        RelGroupoidCandidate::Linear(c) => {
            let g = c.space();
            let mut gn = g.clone();
            let mut stack = Matrix::identity(g.dim());
            for _ in 1..n {
                gn = gn.direct_sum(g);
                stack = stack.vstack(&Matrix::identity(g.dim()));
            }
            GpdRelation::Linear(crate::symplin::LinRelation::graph(g, &gn, &stack).expect("sizes"))
        }
    }
}
