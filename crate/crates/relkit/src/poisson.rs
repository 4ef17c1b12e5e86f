//! Bivectors on ℚⁿ with constant plus linear coefficients, their Jacobi
//! residuals and the coordinate Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::symplin::matrix::{format_rational, Matrix, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PoissonError {
    #[error("coefficients are not antisymmetric: {0}")]
    NotSkew(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree {got} exceeds the cap {max}")]
    DegreeOverflow { max: u32, got: u32 },
}

/// A polynomial in `x1..xn` with rational coefficients. Zero coefficients
/// are never stored, so equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyFunction {
    n: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl PolyFunction {
    pub fn zero(n: usize) -> PolyFunction {
        PolyFunction {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> PolyFunction {
        PolyFunction::from_terms(n, [(vec![0; n], c)]).expect("constant has the right arity")
    }

    /// The coordinate `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> PolyFunction {
        let mut e = vec![0; n];
        e[i] = 1;
        PolyFunction::from_terms(n, [(e, Q::one())]).expect("in range")
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<PolyFunction, PoissonError>
    where
        I: IntoIterator<Item = (Vec<u32>, Q)>,
    {
        let mut out = PolyFunction::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(PoissonError::Dimension(format!(
                    "monomial with {} exponents in {} variables",
                    e.len(),
                    n
                )));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `0` for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &PolyFunction) -> PolyFunction {
        assert_eq!(self.n, other.n, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyFunction) -> PolyFunction {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> PolyFunction {
        let mut out = PolyFunction::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &PolyFunction) -> PolyFunction {
        assert_eq!(self.n, other.n, "arity mismatch");
        let mut out = PolyFunction::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> PolyFunction {
        let mut out = PolyFunction::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Q::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.n);
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for PolyFunction {
    /// Highest degree first, e.g. `x1^2*x3 - 1/2*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c < &Q::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `Π^{ij}(x) = a^{ij} + Σ_k c^{ij}_k x_k`, both blocks skew in `(i,j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyBivector {
    n: usize,
    constant: Matrix,
    /// `linear[k]` is the matrix `(c^{ij}_k)_{ij}`.
    linear: Vec<Matrix>,
}

impl PolyBivector {
    pub fn new(constant: Matrix, linear: Vec<Matrix>) -> Result<PolyBivector, PoissonError> {
        let n = constant.rows();
        if constant.cols() != n || linear.len() != n || linear.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(PoissonError::Dimension(format!(
                "expected an {n}×{n} constant block and {n} linear blocks of the same size"
            )));
        }
        if !constant.is_skew() {
            return Err(PoissonError::NotSkew("constant block".into()));
        }
        if let Some(k) = linear.iter().position(|m| !m.is_skew()) {
            return Err(PoissonError::NotSkew(format!("coefficient of x{}", k + 1)));
        }
        Ok(PolyBivector { n, constant, linear })
    }

    pub fn zero(n: usize) -> PolyBivector {
        PolyBivector {
            n,
            constant: Matrix::zeros(n, n),
            linear: vec![Matrix::zeros(n, n); n],
        }
    }

    /// Builds Π from entries given for `i < j` (0-based) as polynomials of
    /// degree ≤ 1; the rest is filled in by skew-symmetry.
    pub fn from_upper_entries(n: usize, entries: &[((usize, usize), PolyFunction)]) -> Result<PolyBivector, PoissonError> {
        let mut constant = Matrix::zeros(n, n).to_rows();
        let mut linear: Vec<Vec<Vec<Q>>> = vec![Matrix::zeros(n, n).to_rows(); n];
        for ((i, j), p) in entries {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || i == j {
                return Err(PoissonError::Dimension(format!("entry ({},{})", i + 1, j + 1)));
            }
            if p.arity() != n {
                return Err(PoissonError::Dimension("entry polynomial has the wrong arity".into()));
            }
            if p.degree() > 1 {
                return Err(PoissonError::DegreeOverflow { max: 1, got: p.degree() });
            }
            let c0 = p.coefficient(&vec![0; n]);
            constant[i][j] = c0.clone();
            constant[j][i] = -c0;
            for (k, block) in linear.iter_mut().enumerate() {
                let mut e = vec![0; n];
                e[k] = 1;
                let ck = p.coefficient(&e);
                block[i][j] = ck.clone();
                block[j][i] = -ck;
            }
        }
        PolyBivector::new(
            Matrix::from_rows(constant),
            linear.into_iter().map(Matrix::from_rows).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> &Matrix {
        &self.constant
    }

    pub fn linear(&self) -> &[Matrix] {
        &self.linear
    }

    /// `c^{ij}_k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Q {
        self.linear[k][(i, j)].clone()
    }

    /// `Π^{ij}` as a polynomial.
    pub fn entry(&self, i: usize, j: usize) -> PolyFunction {
        let n = self.n;
        let mut terms = vec![(vec![0; n], self.constant[(i, j)].clone())];
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            terms.push((e, self.c(i, j, k)));
        }
        PolyFunction::from_terms(n, terms).expect("arity n")
    }

    pub fn is_linear(&self) -> bool {
        self.constant.is_zero()
    }

    /// `c_{ij}^k`, as `c[i][j][k]`, when the constant block vanishes.
    pub fn structure_constants(&self) -> Option<Vec<Vec<Vec<Q>>>> {
        if !self.is_linear() {
            return None;
        }
        let n = self.n;
        Some(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| self.c(i, j, k)).collect()).collect())
                .collect(),
        )
    }
}

/// `J^{slk}` for `s < l < k`, computed in closed form from the coefficients:
/// `Σ_r [Π^{sr} c^{lk}_r + Π^{kr} c^{sl}_r + Π^{lr} c^{ks}_r]`.
pub fn jacobi_residual(p: &PolyBivector) -> Vec<((usize, usize, usize), PolyFunction)> {
    let n = p.n;
    let mut out = Vec::new();
    for s in 0..n {
        for l in s + 1..n {
            for k in l + 1..n {
                let mut terms = Vec::new();
                for r in 0..n {
                    for (a, b, c) in [(s, l, k), (k, s, l), (l, k, s)] {
                        // Π^{ar} ∂_r Π^{bc}
                        let d = p.c(b, c, r);
                        if d.is_zero() {
                            continue;
                        }
                        terms.push((vec![0; n], p.constant[(a, r)].clone() * &d));
                        for m in 0..n {
                            let mut e = vec![0; n];
                            e[m] = 1;
                            terms.push((e, p.c(a, r, m) * &d));
                        }
                    }
                }
                out.push(((s, l, k), PolyFunction::from_terms(n, terms).expect("arity n")));
            }
        }
    }
    out
}

pub fn is_poisson(p: &PolyBivector) -> bool {
    jacobi_residual(p).iter().all(|(_, j)| j.is_zero())
}

/// `Π^{ij}(x) = Σ_k c_{ij}^k x_k` from `c[i][j][k]`.
pub fn from_structure_constants(c: &[Vec<Vec<Q>>]) -> Result<PolyBivector, PoissonError> {
    let n = c.len();
    if c.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
        return Err(PoissonError::Dimension(format!("structure constants must be {n}×{n}×{n}")));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if c[i][j][k] != -c[j][i][k].clone() {
                    return Err(PoissonError::NotSkew(format!(
                        "c_{{{}{}}}^{} ≠ −c_{{{}{}}}^{}",
                        i + 1,
                        j + 1,
                        k + 1,
                        j + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let linear = (0..n)
        .map(|k| Matrix::from_rows((0..n).map(|i| (0..n).map(|j| c[i][j][k].clone()).collect()).collect()))
        .collect();
    PolyBivector::new(Matrix::zeros(n, n), linear)
}

/// The Lie algebra Jacobi identity on structure constants:
/// `Σ_m c_{ij}^m c_{mk}^l + c_{jk}^m c_{mi}^l + c_{ki}^m c_{mj}^l = 0`.
pub fn lie_jacobi_holds(c: &[Vec<Vec<Q>>]) -> bool {
    let n = c.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = Q::zero();
                    for m in 0..n {
                        acc += &c[i][j][m] * &c[m][k][l];
                        acc += &c[j][k][m] * &c[m][i][l];
                        acc += &c[k][i][m] * &c[m][j][l];
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `{f,g} = Σ_{ij} Π^{ij} ∂_i f ∂_j g`, refused when the result could exceed
/// `max_degree`.
pub fn poisson_bracket(
    p: &PolyBivector,
    f: &PolyFunction,
    g: &PolyFunction,
    max_degree: u32,
) -> Result<PolyFunction, PoissonError> {
    let n = p.n;
    if f.arity() != n || g.arity() != n {
        return Err(PoissonError::Dimension(format!("functions must have {n} variables")));
    }
    let bound = (f.degree() + g.degree()).saturating_sub(1);
    if bound > max_degree {
        return Err(PoissonError::DegreeOverflow {
            max: max_degree,
            got: bound,
        });
    }
    let df: Vec<_> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<_> = (0..n).map(|j| g.derivative(j)).collect();
    let mut out = PolyFunction::zero(n);
    for i in 0..n {
        if df[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if i == j || dg[j].is_zero() {
                continue;
            }
            out = out.add(&p.entry(i, j).mul(&df[i]).mul(&dg[j]));
        }
    }
    Ok(out)
}

/// `{x_s,{x_l,x_k}} + {x_k,{x_s,x_l}} + {x_l,{x_k,x_s}}` through the bracket.
pub fn bracket_jacobiator(p: &PolyBivector, s: usize, l: usize, k: usize) -> PolyFunction {
    let n = p.n;
    let x = |i: usize| PolyFunction::var(n, i);
    let br = |a: &PolyFunction, b: &PolyFunction| poisson_bracket(p, a, b, 4).expect("degrees stay small");
    let term = |a: usize, b: usize, c: usize| br(&x(a), &br(&x(b), &x(c)));
    term(s, l, k).add(&term(k, s, l)).add(&term(l, k, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplin::matrix::q;

    fn eps() -> Vec<Vec<Vec<Q>>> {
        let mut c = vec![vec![vec![q(0); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = q(1);
            c[j][i][k] = q(-1);
        }
        c
    }

    fn failing() -> PolyBivector {
        let x = |i| PolyFunction::var(3, i);
        PolyBivector::from_upper_entries(3, &[((0, 1), x(0)), ((1, 2), x(1))]).unwrap()
    }

    #[test]
    fn zero_and_constant_are_poisson() {
        assert!(is_poisson(&PolyBivector::zero(4)));
        let a = Matrix::from_i64(&[&[0, 2, -1], &[-2, 0, 5], &[1, -5, 0]]);
        let p = PolyBivector::new(a, vec![Matrix::zeros(3, 3); 3]).unwrap();
        assert!(is_poisson(&p));
    }

    #[test]
    fn perturbed_example_has_residual_x1() {
        let res = jacobi_residual(&failing());
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].1, PolyFunction::var(3, 0));
        assert_eq!(res[0].1.to_string(), "x1");
        assert_eq!(bracket_jacobiator(&failing(), 0, 1, 2), PolyFunction::var(3, 0));
        let c = failing().structure_constants().unwrap();
        assert!(!lie_jacobi_holds(&c));
    }

    #[test]
    fn su2_constants_are_poisson() {
        let c = eps();
        assert!(lie_jacobi_holds(&c));
        let p = from_structure_constants(&c).unwrap();
        assert!(is_poisson(&p));
        assert_eq!(p.structure_constants().unwrap(), c);
    }

    #[test]
    fn non_antisymmetric_constants_rejected() {
        let mut c = eps();
        c[0][1][2] = q(2);
        assert!(matches!(from_structure_constants(&c), Err(PoissonError::NotSkew(_))));
    }

    #[test]
    fn coordinate_brackets_and_leibniz() {
        let p = from_structure_constants(&eps()).unwrap();
        let x = |i| PolyFunction::var(3, i);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(poisson_bracket(&p, &x(i), &x(j), 4).unwrap(), p.entry(i, j));
            }
        }
        let f = x(0).mul(&x(1)).add(&PolyFunction::constant(3, q(2)));
        let g = x(2).mul(&x(2));
        let h = x(0).add(&x(1).scale(&q(3)));
        let lhs = poisson_bracket(&p, &f, &g.mul(&h), 8).unwrap();
        let rhs = poisson_bracket(&p, &f, &g, 8)
            .unwrap()
            .mul(&h)
            .add(&g.mul(&poisson_bracket(&p, &f, &h, 8).unwrap()));
        assert_eq!(lhs, rhs);
        let fg = poisson_bracket(&p, &f, &g, 8).unwrap();
        let gf = poisson_bracket(&p, &g, &f, 8).unwrap();
        assert!(fg.add(&gf).is_zero());
    }

    #[test]
    fn degree_cap() {
        let p = PolyBivector::zero(2);
        let x = PolyFunction::var(2, 0);
        let big = x.mul(&x).mul(&x);
        assert!(matches!(
            poisson_bracket(&p, &big, &big, 3),
            Err(PoissonError::DegreeOverflow { max: 3, got: 5 })
        ));
    }

    #[test]
    fn display_is_canonical() {
        let x = |i| PolyFunction::var(3, i);
        let f = x(0).mul(&x(0)).mul(&x(2)).sub(&x(1).scale(&crate::symplin::matrix::q2(1, 2)))
            .add(&PolyFunction::constant(3, q(3)));
        assert_eq!(f.to_string(), "x1^2*x3 - 1/2*x2 + 3");
        assert_eq!(PolyFunction::zero(2).to_string(), "0");
    }
}
