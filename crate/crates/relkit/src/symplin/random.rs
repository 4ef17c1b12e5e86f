//! Random exact instances for property tests and sweeps.

use rand::Rng;

use super::{q2, LinRelation, Matrix, Subspace, SympSpace, Q};

/// A rational with numerator in `-3..=3` and denominator in `1..=2`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Q {
    q2(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n).map(|_| rational(rng)).collect()
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| vector(rng, cols)).collect())
}

pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let a = matrix(rng, n, n);
    a.add(&a.transpose().neg())
}

/// Span of `k` random vectors; the dimension may come out below `k`.
pub fn subspace<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Subspace {
    let vs: Vec<Vec<Q>> = (0..k).map(|_| vector(rng, n)).collect();
    Subspace::span(n, &vs)
}

/// A random vector of `s`.
pub fn element<R: Rng + ?Sized>(rng: &mut R, s: &Subspace) -> Vec<Q> {
    s.basis().mul_vec(&vector(rng, s.dim()))
}

/// `ω = BᵀJB` for a random invertible `B`.
pub fn symp_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SympSpace {
    let j = SympSpace::standard(n);
    let b = invertible(rng, 2 * n);
    SympSpace::new(b.transpose().mul(j.omega()).mul(&b)).expect("congruent to the standard form")
}

/// Grows an isotropic subspace one random vector at a time.
pub fn lagrangian<R: Rng + ?Sized>(rng: &mut R, v: &SympSpace) -> Subspace {
    let mut l = Subspace::zero(v.dim());
    while 2 * l.dim() < v.dim() {
        let perp = v.orthogonal(&l).expect("same space");
        let x = element(rng, &perp);
        if !l.contains(&x) {
            l = l.sum(&Subspace::span(v.dim(), &[x]));
        }
    }
    l
}

/// `S⊥` for a random subspace `S` of a random Lagrangian.
pub fn coisotropic<R: Rng + ?Sized>(rng: &mut R, v: &SympSpace) -> Subspace {
    let l = lagrangian(rng, v);
    let k = rng.gen_range(0..=l.dim());
    let vs: Vec<Vec<Q>> = (0..k).map(|_| element(rng, &l)).collect();
    v.orthogonal(&Subspace::span(v.dim(), &vs)).expect("same space")
}

pub fn lagrangian_relation<R: Rng + ?Sized>(rng: &mut R, src: &SympSpace, dst: &SympSpace) -> LinRelation {
    let amb = src.conjugate().direct_sum(dst);
    LinRelation::new(src, dst, lagrangian(rng, &amb)).expect("dimensions agree")
}
