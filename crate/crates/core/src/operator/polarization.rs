use serde::{Deserialize, Serialize};

use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Splitting `C^n = H+ ⊕ H-` where `H+` is spanned by the first `plus_dim`
/// standard basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    dim: usize,
    plus_dim: usize,
}

impl Polarization {
    pub fn new(dim: usize, plus_dim: usize) -> Result<Self> {
        if plus_dim > dim {
            return Err(Error::Shape(format!(
                "plus dimension {plus_dim} exceeds ambient dimension {dim}"
            )));
        }
        Ok(Polarization { dim, plus_dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn plus_dim(&self) -> usize {
        self.plus_dim
    }

    pub fn minus_dim(&self) -> usize {
        self.dim - self.plus_dim
    }

    pub fn is_plus(&self, index: usize) -> bool {
        index < self.plus_dim
    }

    /// The sign operator `ε = diag(+1 × k, -1 × (n-k))`.
    pub fn sign_operator(&self) -> CMatrix {
        let diag: Vec<f64> = (0..self.dim)
            .map(|i| if self.is_plus(i) { 1.0 } else { -1.0 })
            .collect();
        CMatrix::from_real_diagonal(&diag)
    }

    /// Orthogonal projector onto `H-`.
    pub fn minus_projector(&self) -> CMatrix {
        let diag: Vec<f64> = (0..self.dim)
            .map(|i| if self.is_plus(i) { 0.0 } else { 1.0 })
            .collect();
        CMatrix::from_real_diagonal(&diag)
    }
}

/// The four blocks of an operator relative to a [`Polarization`]:
/// `a: H+→H+`, `b: H-→H+`, `c: H+→H-`, `d: H-→H-`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    pub a: CMatrix,
    pub b: CMatrix,
    pub c: CMatrix,
    pub d: CMatrix,
}

impl BlockOperator {
    pub fn reassemble(&self) -> CMatrix {
        let k = self.a.rows();
        let n = k + self.d.rows();
        CMatrix::from_fn(n, n, |i, j| match (i < k, j < k) {
            (true, true) => self.a.get(i, j),
            (true, false) => self.b.get(i, j - k),
            (false, true) => self.c.get(i - k, j),
            (false, false) => self.d.get(i - k, j - k),
        })
    }
}

pub fn block_decompose(a: &CMatrix, pol: &Polarization) -> Result<BlockOperator> {
    a.ensure_size(pol.dim(), "operator")?;
    let k = pol.plus_dim();
    let m = pol.minus_dim();
    Ok(BlockOperator {
        a: a.block(0, 0, k, k),
        b: a.block(0, k, k, m),
        c: a.block(k, 0, m, k),
        d: a.block(k, k, m, m),
    })
}

/// `εA − Aε`: zero on the diagonal blocks, `2b` and `−2c` off the diagonal.
pub fn sign_commutator(a: &CMatrix, pol: &Polarization) -> Result<CMatrix> {
    a.ensure_size(pol.dim(), "operator")?;
    let k = pol.plus_dim();
    Ok(CMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let si = if i < k { 1.0 } else { -1.0 };
        let sj = if j < k { 1.0 } else { -1.0 };
        a.get(i, j) * C64::new(si - sj, 0.0)
    }))
}
