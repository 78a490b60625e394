//! Regularized Fredholm determinants `det_p(1+A) = det(1 + R_p(A))`, the
//! multiplicativity defect `γ_p` and the cocycle `ω_p`.
//!
//! `det_p` is always evaluated twice: once from the definition through
//! `R_p(A) = -1 + (1+A) exp(Σ_{j<p} (-1)^j A^j / j)`, and once as
//! `det(1+A) · exp(Tr Σ_{j<p} (-1)^j A^j / j)`. The two must agree.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{determinant, matrix_exponential, spectral_radius, CMatrix, C64};

/// Relative agreement required between the two `det_p` evaluations.
pub const DUAL_FORMULA_TOL: f64 = 1e-9;
/// Determinants below this modulus are treated as vanishing.
pub const SINGULAR_CUTOFF: f64 = 1e-12;
/// Margin used when testing the spectral radius against 1.
pub const SPECTRAL_MARGIN: f64 = 1e-8;

/// An operator `1 + A`, stored through its perturbation `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitalPerturbation {
    a: CMatrix,
}

impl UnitalPerturbation {
    pub fn new(a: CMatrix) -> Result<Self> {
        a.ensure_square("perturbation")?;
        Ok(UnitalPerturbation { a })
    }

    /// Perturbation `M - 1` of an operator `M`.
    pub fn from_operator(m: &CMatrix) -> Result<Self> {
        Self::new(m.shift_identity(C64::new(-1.0, 0.0)))
    }

    pub fn zero(n: usize) -> Self {
        UnitalPerturbation { a: CMatrix::zeros(n, n) }
    }

    pub fn perturbation(&self) -> &CMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn operator(&self) -> CMatrix {
        self.a.shift_identity(C64::new(1.0, 0.0))
    }

    /// Perturbation of the operator product `(1+A)(1+B)`, materialized.
    pub fn compose(&self, other: &UnitalPerturbation) -> Result<UnitalPerturbation> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "cannot compose {}-dim and {}-dim perturbations",
                self.dim(),
                other.dim()
            )));
        }
        Self::from_operator(&(&self.operator() * &other.operator()))
    }
}

/// Result of a regularized determinant evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegDet {
    pub value: C64,
    /// Principal logarithm of `value`.
    pub log_value: C64,
    pub order: u32,
    /// Relative discrepancy between the two evaluation routes.
    pub dual_discrepancy: f64,
}

fn check_order(p: u32) -> Result<()> {
    if p < 1 {
        Err(Error::InvalidOrder(p as f64))
    } else {
        Ok(())
    }
}

/// `Σ_{j=1}^{p-1} (-1)^j A^j / j`.
fn subtracted_series(a: &CMatrix, p: u32) -> CMatrix {
    let n = a.rows();
    let mut sum = CMatrix::zeros(n, n);
    let mut power = CMatrix::identity(n);
    for j in 1..p {
        power = &power * a;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum = &sum + &power.scale_real(sign / j as f64);
    }
    sum
}

pub fn r_p(a: &CMatrix, p: u32) -> Result<CMatrix> {
    check_order(p)?;
    a.ensure_square("perturbation")?;
    if p == 1 {
        return Ok(a.clone());
    }
    let factor = matrix_exponential(&subtracted_series(a, p))?;
    let one_plus_a = a.shift_identity(C64::new(1.0, 0.0));
    Ok((&one_plus_a * &factor).shift_identity(C64::new(-1.0, 0.0)))
}

pub fn det_p(a: &CMatrix, p: u32) -> Result<RegDet> {
    check_order(p)?;
    a.ensure_square("perturbation")?;
    let by_definition = determinant(&r_p(a, p)?.shift_identity(C64::new(1.0, 0.0)))?;
    let classical = determinant(&a.shift_identity(C64::new(1.0, 0.0)))?;
    let by_trace = classical * subtracted_series(a, p).trace().exp();

    let scale = by_definition.norm().max(by_trace.norm());
    let diff = (by_definition - by_trace).norm();
    let discrepancy = if scale > 0.0 { diff / scale } else { 0.0 };
    if diff > DUAL_FORMULA_TOL * scale && diff > SINGULAR_CUTOFF {
        return Err(Error::Consistency(format!(
            "det_{p} routes disagree: {by_definition} vs {by_trace} (relative {discrepancy:.3e})"
        )));
    }
    let log_value = if by_definition.norm() > 0.0 {
        by_definition.ln()
    } else {
        C64::new(f64::NEG_INFINITY, 0.0)
    };
    Ok(RegDet {
        value: by_definition,
        log_value,
        order: p,
        dual_discrepancy: discrepancy,
    })
}

/// Partial sum `Σ_{j=p}^{p+terms-1} (-1)^{j+1} Tr(A^j) / j` of the regularized
/// log-determinant series. Requires spectral radius below one.
pub fn log_det_p_series(a: &CMatrix, p: u32, terms: usize) -> Result<C64> {
    check_order(p)?;
    a.ensure_square("perturbation")?;
    let radius = spectral_radius(a)?;
    if radius >= 1.0 - SPECTRAL_MARGIN {
        return Err(Error::Divergence(radius));
    }
    let mut power = a.pow(p as usize);
    let mut sum = C64::new(0.0, 0.0);
    for j in p as usize..p as usize + terms {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        sum += power.trace() * (sign / j as f64);
        power = &power * a;
    }
    Ok(sum)
}

fn wrap_imaginary(z: C64) -> C64 {
    let mut im = z.im % (2.0 * PI);
    if im <= -PI {
        im += 2.0 * PI;
    } else if im > PI {
        im -= 2.0 * PI;
    }
    C64::new(z.re, im)
}

fn nonsingular(d: &RegDet) -> Result<()> {
    if d.value.norm() < SINGULAR_CUTOFF {
        Err(Error::SingularDeterminant(d.value.norm()))
    } else {
        Ok(())
    }
}

/// `γ_p(A,B)` modulo `2πi`, with imaginary part reported in `(-π, π]`.
pub fn gamma_p(a: &UnitalPerturbation, b: &UnitalPerturbation, p: u32) -> Result<C64> {
    let ab = a.compose(b)?;
    let da = det_p(a.perturbation(), p)?;
    let db = det_p(b.perturbation(), p)?;
    let dab = det_p(ab.perturbation(), p)?;
    for d in [&da, &db, &dab] {
        nonsingular(d)?;
    }
    Ok(wrap_imaginary(dab.log_value - da.log_value - db.log_value))
}

/// `ω_p(A,B) = det_p(AB) / det_p(A)`, evaluated as a ratio (no logarithms).
pub fn omega_p(a: &UnitalPerturbation, b: &UnitalPerturbation, p: u32) -> Result<C64> {
    let da = det_p(a.perturbation(), p)?;
    nonsingular(&da)?;
    let dab = det_p(a.compose(b)?.perturbation(), p)?;
    Ok(dab.value / da.value)
}
