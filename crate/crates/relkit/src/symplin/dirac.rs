//! Linear Dirac structures in `V ⊕ V*` with the pairing
//! `⟨(X,α),(Y,β)⟩ = β(X) + α(Y)`.

use super::{Matrix, Subspace, SympError};

/// The double `V ⊕ V*` of an `n`-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiracCarrier {
    pub n: usize,
}

impl DiracCarrier {
    pub fn new(n: usize) -> DiracCarrier {
        DiracCarrier { n }
    }

    /// `[[0, I], [I, 0]]`
    pub fn pairing(&self) -> Matrix {
        let i = Matrix::identity(self.n);
        let z = Matrix::zeros(self.n, self.n);
        z.hstack(&i).vstack(&i.hstack(&z))
    }

    fn require(&self, l: &Subspace) -> Result<(), SympError> {
        if l.ambient_dim() != 2 * self.n {
            return Err(SympError::DimensionMismatch {
                expected: 2 * self.n,
                got: l.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `L = L⊥` under the pairing.
    pub fn is_dirac(&self, l: &Subspace) -> Result<bool, SympError> {
        self.require(l)?;
        Ok(l.dim() == self.n && l.is_isotropic_wrt(&self.pairing()))
    }

    /// `{(Π♯α, α)}` with `Π♯α = Πᵀα`.
    pub fn graph_of_bivector(&self, pi: &Matrix) -> Result<Subspace, SympError> {
        self.square(pi)?;
        Ok(Subspace::from_columns(&pi.transpose().vstack(&Matrix::identity(self.n))))
    }

    /// `{(X, ω♯X)}` with `ω♯X = ωᵀX`.
    pub fn graph_of_two_form(&self, omega: &Matrix) -> Result<Subspace, SympError> {
        self.square(omega)?;
        Ok(Subspace::from_columns(&Matrix::identity(self.n).vstack(&omega.transpose())))
    }

    /// `D ⊕ D°` for a subspace `D ⊆ V`.
    pub fn of_distribution(&self, d: &Subspace) -> Result<Subspace, SympError> {
        if d.ambient_dim() != self.n {
            return Err(SympError::DimensionMismatch {
                expected: self.n,
                got: d.ambient_dim(),
            });
        }
        let ann = if d.dim() == 0 {
            Matrix::identity(self.n)
        } else {
            d.basis().transpose().kernel()
        };
        let top = d.basis().hstack(&Matrix::zeros(self.n, ann.cols()));
        let bottom = Matrix::zeros(self.n, d.dim()).hstack(&ann);
        Ok(Subspace::from_columns(&top.vstack(&bottom)))
    }

    fn square(&self, m: &Matrix) -> Result<(), SympError> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(SympError::DimensionMismatch {
                expected: self.n,
                got: m.rows().max(m.cols()),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageDirection {
    Backward,
    Forward,
}

/// Images of a linear Dirac structure under `φ : V → W`.
///
/// Backward takes `L ⊆ W ⊕ W*` to `{(v, φ*β) | (φv, β) ∈ L}`; forward takes
/// `L ⊆ V ⊕ V*` to `{(φv, β) | (v, φ*β) ∈ L}`.
pub fn dirac_image(direction: ImageDirection, l: &Subspace, phi: &Matrix) -> Result<Subspace, SympError> {
    let (m, n) = (phi.rows(), phi.cols());
    let (side, out) = match direction {
        ImageDirection::Backward => (m, n),
        ImageDirection::Forward => (n, m),
    };
    if l.ambient_dim() != 2 * side {
        return Err(SympError::DimensionMismatch {
            expected: 2 * side,
            got: l.ambient_dim(),
        });
    }
    let b = l.basis();
    let k = b.cols();
    let lx = b.row_block(0, side);
    let la = b.row_block(side, 2 * side);
    let result = match direction {
        ImageDirection::Backward => {
            let ker = phi.hstack(&lx.neg()).kernel();
            let v = ker.row_block(0, n);
            let x = ker.row_block(n, n + k);
            v.vstack(&phi.transpose().mul(&la).mul(&x))
        }
        ImageDirection::Forward => {
            let ker = phi.transpose().hstack(&la.neg()).kernel();
            let beta = ker.row_block(0, m);
            let x = ker.row_block(m, m + k);
            phi.mul(&lx).mul(&x).vstack(&beta)
        }
    };
    debug_assert_eq!(result.rows(), 2 * out);
    Ok(Subspace::from_columns(&result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplin::q;

    #[test]
    fn standard_examples_are_dirac() {
        let d = DiracCarrier::new(3);
        let pi = Matrix::from_i64(&[&[0, 1, -2], &[-1, 0, 3], &[2, -3, 0]]);
        assert!(d.is_dirac(&d.graph_of_bivector(&pi).unwrap()).unwrap());
        assert!(d.is_dirac(&d.graph_of_two_form(&pi).unwrap()).unwrap());
        let sym = Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(!d.is_dirac(&d.graph_of_two_form(&sym).unwrap()).unwrap());
        let dist = Subspace::span(3, &[vec![q(1), q(1), q(0)]]);
        assert!(d.is_dirac(&d.of_distribution(&dist).unwrap()).unwrap());
        assert!(d.is_dirac(&d.of_distribution(&Subspace::zero(3)).unwrap()).unwrap());
    }

    #[test]
    fn backward_image_of_two_form_is_pullback() {
        let w = DiracCarrier::new(2);
        let omega = Matrix::from_i64(&[&[0, 5], &[-5, 0]]);
        let phi = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, -1]]);
        let l = w.graph_of_two_form(&omega).unwrap();
        let img = dirac_image(ImageDirection::Backward, &l, &phi).unwrap();
        let pulled = phi.transpose().mul(&omega).mul(&phi);
        assert_eq!(img, DiracCarrier::new(3).graph_of_two_form(&pulled).unwrap());
    }

    #[test]
    fn forward_image_of_bivector_is_pushforward() {
        let v = DiracCarrier::new(2);
        let pi = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let phi = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let img = dirac_image(ImageDirection::Forward, &v.graph_of_bivector(&pi).unwrap(), &phi).unwrap();
        let pushed = phi.mul(&pi).mul(&phi.transpose());
        assert_eq!(img, v.graph_of_bivector(&pushed).unwrap());
    }
}
