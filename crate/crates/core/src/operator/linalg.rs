//! Dense kernels: determinant, exponential, Hermitian eigensystems, SVD
//! and column-space projectors.

use nalgebra::{SymmetricEigen, QR, SVD};

use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Absolute tolerance on `max |D - D*|` for Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Determinant by LU elimination with partial pivoting.
pub fn determinant(a: &CMatrix) -> Result<C64> {
    let n = a.ensure_square("determinant argument")?;
    let mut m = a.row_major();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| m[r * n + col].norm().total_cmp(&m[s * n + col].norm()))
            .unwrap_or(col);
        let p = m[pivot * n + col];
        if p.norm() == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        det *= p;
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m[col * n + j];
                m[r * n + j] -= factor * v;
            }
        }
    }
    Ok(det)
}

/// Inverse via nalgebra's LU; fails on exactly singular input.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    a.ensure_square("inverse argument")?;
    a.inner()
        .clone()
        .try_inverse()
        .map(CMatrix::from)
        .ok_or(Error::SingularTransform(0.0))
}

/// Matrix exponential by scaling and squaring around a Taylor core.
pub fn matrix_exponential(a: &CMatrix) -> Result<CMatrix> {
    let n = a.ensure_square("exponential argument")?;
    let norm = a.one_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..=40 {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_abs() <= f64::EPSILON * 1e-3 * sum.max_abs().max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

/// Ascending eigenvalues and a unitary matrix of eigenvectors (columns).
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_violation(d: &CMatrix) -> f64 {
    d.max_abs_diff(&d.adjoint())
}

/// Eigen-decomposition of a Hermitian matrix. Ties keep the solver's column order.
pub fn hermitian_eigensystem(d: &CMatrix) -> Result<Eigensystem> {
    let n = d.ensure_square("Hermitian operator")?;
    let violation = hermitian_violation(d);
    if violation > HERMITIAN_TOL {
        return Err(Error::Symmetry {
            what: "Hermitian operator",
            violation,
        });
    }
    if n == 0 {
        return Ok(Eigensystem {
            values: vec![],
            vectors: CMatrix::zeros(0, 0),
        });
    }
    // Symmetrize exactly so the solver sees a Hermitian input.
    let sym = (d + &d.adjoint()).scale_real(0.5);
    let eig = SymmetricEigen::new(sym.into_inner());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Eigensystem { values, vectors })
}

/// Singular values in descending order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return vec![];
    }
    let svd = SVD::new(a.inner().clone(), false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Numerical rank: count of singular values above `tol`.
pub fn rank(a: &CMatrix, tol: f64) -> usize {
    singular_values(a).into_iter().filter(|&s| s > tol).count()
}

/// Orthogonal projector onto the column span of a full-column-rank matrix,
/// built from a thin QR factorization.
pub fn column_projector(a: &CMatrix) -> CMatrix {
    if a.cols() == 0 {
        return CMatrix::zeros(a.rows(), a.rows());
    }
    let q = CMatrix::from(QR::new(a.inner().clone()).q());
    &q * &q.adjoint()
}

/// Moduli of the eigenvalues of a general square matrix, via complex Schur form.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    let n = a.ensure_square("spectral radius argument")?;
    if n == 0 {
        return Ok(0.0);
    }
    let schur = nalgebra::Schur::new(a.inner().clone());
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)].norm()).fold(0.0, f64::max))
}

pub fn unitarity_violation(u: &CMatrix) -> f64 {
    (&u.adjoint() * u).max_abs_diff(&CMatrix::identity(u.cols()))
}
