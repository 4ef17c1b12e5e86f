//! Exact symplectic linear algebra over the rationals: orthogonals, special
//! subspaces, reduction, linear canonical relations, and linear Dirac
//! structures.

pub mod dirac;
pub mod matrix;
pub mod random;

use num_traits::Zero;

pub use matrix::{format_rational, parse_rational, q, q2, Matrix, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SympError {
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("form is degenerate")]
    Degenerate,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("spaces do not match: {0}")]
    SpaceMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A subspace of `Qⁿ`, stored by a canonical basis: the nonzero rows of the
/// reduced row echelon form of any spanning set, used as columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Matrix,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(n={}, span={:?})", self.n, self.basis.transpose())
    }
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn from_columns(m: &Matrix) -> Subspace {
        let n = m.rows();
        let (r, pivots) = m.transpose().rref();
        let basis = r.row_block(0, pivots.len()).transpose();
        let basis = if pivots.is_empty() {
            Matrix::zeros(n, 0)
        } else {
            basis
        };
        Subspace { n, basis }
    }

    pub fn span(n: usize, vectors: &[Vec<Q>]) -> Subspace {
        Subspace::from_columns(&Matrix::from_columns(n, vectors))
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            basis: Matrix::zeros(n, 0),
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace::from_columns(&Matrix::identity(n))
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Q>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.n, "vector length");
        let m = self.basis.hstack(&Matrix::from_columns(self.n, &[v.to_vec()]));
        m.rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.n == other.n && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n, "ambient dimension");
        Subspace::from_columns(&self.basis.hstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n, "ambient dimension");
        let k = self.basis.hstack(&other.basis.neg()).kernel();
        let coeffs = k.row_block(0, self.dim());
        Subspace::from_columns(&self.basis.mul(&coeffs))
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.n, "map domain");
        Subspace::from_columns(&m.mul(&self.basis))
    }

    /// `{v | vᵀ B w = 0 for all w}` for an arbitrary bilinear form `B`.
    pub fn orthogonal_wrt(&self, form: &Matrix) -> Subspace {
        assert_eq!(form.rows(), self.n, "form size");
        let k = form.mul(&self.basis).transpose();
        if k.rows() == 0 {
            return Subspace::full(self.n);
        }
        Subspace::from_columns(&k.kernel())
    }

    /// `Wᵀ B W = 0`.
    pub fn is_isotropic_wrt(&self, form: &Matrix) -> bool {
        self.basis.transpose().mul(form).mul(&self.basis).is_zero()
    }
}

/// `Qⁿ` with an invertible skew form. `n` may be zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SympSpace {
    omega: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceClass {
    pub isotropic: bool,
    pub coisotropic: bool,
    pub lagrangian: bool,
    pub symplectic: bool,
}

impl SubspaceClass {
    /// The most specific label: lagrangian, isotropic, coisotropic,
    /// symplectic, or none. `{0}` and `V` count as isotropic and coisotropic.
    pub fn label(&self) -> &'static str {
        if self.lagrangian {
            "lagrangian"
        } else if self.isotropic {
            "isotropic"
        } else if self.coisotropic {
            "coisotropic"
        } else if self.symplectic {
            "symplectic"
        } else {
            "none"
        }
    }
}

impl SympSpace {
    pub fn new(omega: Matrix) -> Result<SympSpace, SympError> {
        if !omega.is_skew() {
            return Err(SympError::NotSkew);
        }
        if !omega.is_invertible() {
            return Err(SympError::Degenerate);
        }
        Ok(SympSpace { omega })
    }

    /// `Q^{2n}` with `ω = [[0, I], [-I, 0]]`.
    pub fn standard(n: usize) -> SympSpace {
        let i = Matrix::identity(n);
        let z = Matrix::zeros(n, n);
        let omega = z.hstack(&i).vstack(&i.neg().hstack(&z));
        SympSpace { omega }
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    pub fn pairing(&self, u: &[Q], v: &[Q]) -> Q {
        u.iter()
            .zip(self.omega.mul_vec(v))
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Same space with `-ω`.
    pub fn conjugate(&self) -> SympSpace {
        SympSpace {
            omega: self.omega.neg(),
        }
    }

    pub fn direct_sum(&self, other: &SympSpace) -> SympSpace {
        SympSpace {
            omega: self.omega.block_diag(&other.omega),
        }
    }

    fn require(&self, w: &Subspace) -> Result<(), SympError> {
        if w.ambient_dim() != self.dim() {
            return Err(SympError::DimensionMismatch {
                expected: self.dim(),
                got: w.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn orthogonal(&self, w: &Subspace) -> Result<Subspace, SympError> {
        self.require(w)?;
        Ok(w.orthogonal_wrt(&self.omega))
    }

    pub fn classify(&self, w: &Subspace) -> Result<SubspaceClass, SympError> {
        let perp = self.orthogonal(w)?;
        let isotropic = w.is_subspace_of(&perp);
        let coisotropic = perp.is_subspace_of(w);
        Ok(SubspaceClass {
            isotropic,
            coisotropic,
            lagrangian: isotropic && coisotropic,
            symplectic: w.intersection(&perp).dim() == 0,
        })
    }

    pub fn is_lagrangian(&self, w: &Subspace) -> Result<bool, SympError> {
        Ok(self.classify(w)?.lagrangian)
    }

    /// `W / (W ∩ W⊥)` with the induced form.
    pub fn reduce(&self, w: &Subspace) -> Result<Reduction, SympError> {
        let perp = self.orthogonal(w)?;
        let kernel = w.intersection(&perp);
        let mut chosen = kernel.basis().clone();
        let mut complement = Matrix::zeros(self.dim(), 0);
        for v in w.basis_vectors() {
            let col = Matrix::from_columns(self.dim(), &[v]);
            let trial = chosen.hstack(&col);
            if trial.rank() > chosen.cols() {
                chosen = trial;
                complement = complement.hstack(&col);
            }
        }
        let form = complement.transpose().mul(&self.omega).mul(&complement);
        let projector = complement.hstack(kernel.basis());
        Ok(Reduction {
            w: w.clone(),
            kernel,
            complement,
            projector,
            space: SympSpace::new(form).expect("induced form on a reduction is symplectic"),
        })
    }

    /// `P_W(L ∩ W)` in the reduction of a coisotropic `W`.
    pub fn project_lagrangian(&self, l: &Subspace, w: &Subspace) -> Result<(Reduction, Subspace), SympError> {
        if !self.classify(w)?.coisotropic {
            return Err(SympError::Precondition("W is not coisotropic".into()));
        }
        if !self.classify(l)?.lagrangian {
            return Err(SympError::Precondition("L is not Lagrangian".into()));
        }
        let red = self.reduce(w)?;
        let image = red.project_subspace(&l.intersection(w))?;
        Ok((red, image))
    }
}

/// A reduction `W̲ = W/(W∩W⊥)`. Classes are written in coordinates of a fixed
/// complement `Q` of the kernel inside `W`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub w: Subspace,
    pub kernel: Subspace,
    /// Columns span a complement of `kernel` in `w`.
    pub complement: Matrix,
    projector: Matrix,
    /// The quotient with `ω̲ = QᵀωQ`.
    pub space: SympSpace,
}

impl Reduction {
    pub fn dim(&self) -> usize {
        self.complement.cols()
    }

    /// Coordinates of the class of `v ∈ W`.
    pub fn project(&self, v: &[Q]) -> Result<Vec<Q>, SympError> {
        let x = self
            .projector
            .solve(v)
            .ok_or_else(|| SympError::Precondition("vector is not in W".into()))?;
        Ok(x[..self.dim()].to_vec())
    }

    pub fn project_subspace(&self, s: &Subspace) -> Result<Subspace, SympError> {
        let coords: Result<Vec<Vec<Q>>, SympError> =
            s.basis_vectors().iter().map(|v| self.project(v)).collect();
        Ok(Subspace::span(self.dim(), &coords?))
    }

    /// A representative of the class with the given coordinates.
    pub fn representative(&self, coords: &[Q]) -> Vec<Q> {
        self.complement.mul_vec(coords)
    }
}

/// A linear relation `src ↛ dst`: a subspace of `src ⊕ dst`, vectors written
/// `(u, w)`, with ambient form `(-ω_src) ⊕ ω_dst`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinRelation {
    pub src: SympSpace,
    pub dst: SympSpace,
    pub space: Subspace,
}

impl LinRelation {
    pub fn new(src: &SympSpace, dst: &SympSpace, space: Subspace) -> Result<LinRelation, SympError> {
        let expected = src.dim() + dst.dim();
        if space.ambient_dim() != expected {
            return Err(SympError::DimensionMismatch {
                expected,
                got: space.ambient_dim(),
            });
        }
        Ok(LinRelation {
            src: src.clone(),
            dst: dst.clone(),
            space,
        })
    }

    pub fn ambient(&self) -> SympSpace {
        self.src.conjugate().direct_sum(&self.dst)
    }

    pub fn classify(&self) -> SubspaceClass {
        self.ambient().classify(&self.space).expect("dimensions agree")
    }

    pub fn is_lagrangian(&self) -> bool {
        self.classify().lagrangian
    }

    /// `{(u, φu)}`.
    pub fn graph(src: &SympSpace, dst: &SympSpace, phi: &Matrix) -> Result<LinRelation, SympError> {
        if phi.rows() != dst.dim() || phi.cols() != src.dim() {
            return Err(SympError::DimensionMismatch {
                expected: dst.dim() * src.dim(),
                got: phi.rows() * phi.cols(),
            });
        }
        let cols = Matrix::identity(src.dim()).vstack(phi);
        LinRelation::new(src, dst, Subspace::from_columns(&cols))
    }

    pub fn identity(v: &SympSpace) -> LinRelation {
        LinRelation::graph(v, v, &Matrix::identity(v.dim())).expect("square")
    }

    pub fn dagger(&self) -> LinRelation {
        let (a, b) = (self.src.dim(), self.dst.dim());
        let basis = self.space.basis();
        let swapped = basis.row_block(a, a + b).vstack(&basis.row_block(0, a));
        LinRelation {
            src: self.dst.clone(),
            dst: self.src.clone(),
            space: Subspace::from_columns(&swapped),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LinRelation) -> Result<LinRelation, SympError> {
        if self.dst != next.src {
            return Err(SympError::SpaceMismatch(
                "middle spaces of the composition differ".into(),
            ));
        }
        let (nu, nv, nw) = (self.src.dim(), self.dst.dim(), next.dst.dim());
        let a = self.space.basis();
        let b = next.space.basis();
        let (ka, kb) = (a.cols(), b.cols());
        let a_u = a.row_block(0, nu);
        let a_v = a.row_block(nu, nu + nv);
        let b_v = b.row_block(0, nv);
        let b_w = b.row_block(nv, nv + nw);
        let k = a_v.hstack(&b_v.neg()).kernel();
        let out = a_u
            .mul(&k.row_block(0, ka))
            .vstack(&b_w.mul(&k.row_block(ka, ka + kb)));
        LinRelation::new(&self.src, &next.dst, Subspace::from_columns(&out))
    }
}

/// `I : C̲ ↛ V`, `I = {([w], w) | w ∈ C}`, and `P = I†`.
pub fn reduction_relations(
    v: &SympSpace,
    c: &Subspace,
) -> Result<(Reduction, LinRelation, LinRelation), SympError> {
    if !v.classify(c)?.coisotropic {
        return Err(SympError::Precondition("C is not coisotropic".into()));
    }
    let red = v.reduce(c)?;
    let mut vectors = Vec::new();
    for w in c.basis_vectors() {
        let mut col = red.project(&w)?;
        col.extend(w);
        vectors.push(col);
    }
    let i = LinRelation::new(&red.space, v, Subspace::span(red.dim() + v.dim(), &vectors))?;
    let p = i.dagger();
    Ok((red, i, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    /// `l(L̲) = I∘L̲∘P` for an endorelation of `C̲`.
    Lift,
    /// `p(L) = P∘L∘I` for an endorelation of `V`.
    Project,
}

pub fn transport_through_reduction(
    direction: Transport,
    l: &LinRelation,
    v: &SympSpace,
    c: &Subspace,
) -> Result<LinRelation, SympError> {
    let (red, i, p) = reduction_relations(v, c)?;
    let expected = match direction {
        Transport::Lift => &red.space,
        Transport::Project => v,
    };
    if &l.src != expected || &l.dst != expected {
        return Err(SympError::Precondition(
            "relation is not an endorelation of the expected space".into(),
        ));
    }
    match direction {
        Transport::Lift => p.then(l)?.then(&i),
        Transport::Project => i.then(l)?.then(&p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Q> {
        (0..n).map(|j| q((i == j) as i64)).collect()
    }

    #[test]
    fn orthogonal_basics() {
        let v = SympSpace::standard(1);
        assert_eq!(v.orthogonal(&Subspace::full(2)).unwrap().dim(), 0);
        let w = Subspace::span(2, &[e(2, 0)]);
        assert_eq!(v.orthogonal(&w).unwrap(), w);
        assert!(v.classify(&w).unwrap().lagrangian);
        assert!(v.classify(&Subspace::zero(2)).unwrap().isotropic);
    }

    #[test]
    fn diagonal_is_lagrangian() {
        let v = SympSpace::standard(2);
        assert!(LinRelation::identity(&v).is_lagrangian());
    }

    #[test]
    fn reductions() {
        let v = SympSpace::standard(2);
        let lag = Subspace::span(4, &[e(4, 0), e(4, 1)]);
        assert_eq!(v.reduce(&lag).unwrap().dim(), 0);
        let co = Subspace::span(4, &[e(4, 0), e(4, 2), e(4, 3)]);
        let red = v.reduce(&co).unwrap();
        assert_eq!(red.dim(), 2);
        assert!(red.space.omega().is_skew());
        let full = v.reduce(&Subspace::full(4)).unwrap();
        assert_eq!(full.space.omega(), v.omega());
    }

    #[test]
    fn lagrangian_projection_example() {
        let v = SympSpace::standard(2);
        let l = Subspace::span(4, &[e(4, 0), e(4, 1)]);
        let w = Subspace::span(4, &[e(4, 0), e(4, 2), e(4, 3)]);
        let (red, lw) = v.project_lagrangian(&l, &w).unwrap();
        assert_eq!(lw.dim(), 1);
        assert!(red.space.is_lagrangian(&lw).unwrap());
        let (red, lw) = v.project_lagrangian(&l, &l).unwrap();
        assert_eq!((red.dim(), lw.dim()), (0, 0));
    }

    #[test]
    fn composing_symplectomorphism_graphs() {
        let v = SympSpace::standard(1);
        let a = Matrix::from_i64(&[&[1, 2], &[0, 1]]);
        let b = Matrix::from_i64(&[&[1, 0], &[-3, 1]]);
        let ga = LinRelation::graph(&v, &v, &a).unwrap();
        let gb = LinRelation::graph(&v, &v, &b).unwrap();
        assert!(ga.is_lagrangian() && gb.is_lagrangian());
        let composite = ga.then(&gb).unwrap();
        assert_eq!(composite, LinRelation::graph(&v, &v, &b.mul(&a)).unwrap());
        assert_eq!(LinRelation::identity(&v).then(&ga).unwrap(), ga);
    }

    #[test]
    fn reduction_relation_identities() {
        let v = SympSpace::standard(2);
        let c = Subspace::span(4, &[e(4, 0), e(4, 2), e(4, 3)]);
        let (red, i, p) = reduction_relations(&v, &c).unwrap();
        assert!(i.is_lagrangian());
        assert_eq!(i.then(&p).unwrap(), LinRelation::identity(&red.space));
        let ip = p.then(&i).unwrap();
        assert_ne!(ip, LinRelation::identity(&v));
        let (_, i_full, _) = reduction_relations(&v, &Subspace::full(4)).unwrap();
        assert_eq!(i_full, LinRelation::identity(&v));
    }
}
