use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix, row/column indexed from zero.
///
/// Thin wrapper over [`nalgebra::DMatrix`]; every operator, frame and Fock
/// endomorphism in the crate is carried by this type.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMatrix(DMatrix::from_fn(rows, cols, f))
    }

    /// Builds from row-major entries; rejects wrong lengths and non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: &[C64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Format("non-finite matrix entry".into()));
        }
        Ok(CMatrix(DMatrix::from_row_slice(rows, cols, data)))
    }

    /// Convenience constructor from nested real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    pub fn scalar(z: C64) -> Self {
        Self::from_diagonal(&[z])
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn ensure_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows())
        } else {
            Err(Error::Shape(format!(
                "{what} must be square, got {}x{}",
                self.rows(),
                self.cols()
            )))
        }
    }

    pub fn ensure_size(&self, n: usize, what: &str) -> Result<()> {
        if self.rows() == n && self.cols() == n {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{what} must be {n}x{n}, got {}x{}",
                self.rows(),
                self.cols()
            )))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.0[(i, j)] = z;
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        CMatrix(self.0.transpose())
    }

    pub fn scale(&self, z: C64) -> Self {
        CMatrix(&self.0 * z)
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.0.diagonal().iter().sum()
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    /// `self + z·1`.
    pub fn shift_identity(&self, z: C64) -> CMatrix {
        let mut out = self.clone();
        for i in 0..self.rows().min(self.cols()) {
            out.0[(i, i)] += z;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.0[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        (self - other).max_abs()
    }

    /// Submatrix copy of rows `r0..r0+nr`, columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> CMatrix {
        CMatrix(self.0.view((r0, c0), (nr, nc)).into_owned())
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.0.column(j).iter().copied().collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> CMatrix {
        CMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows() != other.rows() {
            return Err(Error::Shape(format!(
                "cannot stack {} rows beside {} rows",
                self.rows(),
                other.rows()
            )));
        }
        let left = self.cols();
        Ok(CMatrix::from_fn(self.rows(), left + other.cols(), |i, j| {
            if j < left {
                self.0[(i, j)]
            } else {
                other.0[(i, j - left)]
            }
        }))
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn pow(&self, k: usize) -> CMatrix {
        let mut out = CMatrix::identity(self.rows());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl From<DMatrix<C64>> for CMatrix {
    fn from(m: DMatrix<C64>) -> Self {
        CMatrix(m)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.0[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a CMatrix> for &'a CMatrix {
            type Output = CMatrix;
            fn $method(self, rhs: &'a CMatrix) -> CMatrix {
                CMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $trait<CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $method(self, rhs: CMatrix) -> CMatrix {
                CMatrix(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-&self.0)
    }
}

/// Hermitian inner product `<u, v> = Σ conj(u_i) v_i`.
pub fn inner_product(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
