use serde::{Deserialize, Serialize};

use super::linalg::singular_values;
use super::matrix::CMatrix;
use super::polarization::{block_decompose, Polarization};
use crate::error::{Error, Result};

fn check_order(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(Error::InvalidOrder(p))
    } else {
        Ok(())
    }
}

/// `(Σ s_i^p)^{1/p}` over the singular values of `a`.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    check_order(p)?;
    let s = singular_values(a);
    let max = s.first().copied().unwrap_or(0.0);
    if max == 0.0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(max);
    }
    // Factor out the largest value to keep the powers in range.
    let sum: f64 = s.iter().map(|x| (x / max).powf(p)).sum();
    Ok(max * sum.powf(1.0 / p))
}

/// Largest singular value.
pub fn operator_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Weak-ℓ^p quasi-norm `max_k k^{1/p} s_k` (singular values descending, 1-indexed).
pub fn weak_quasi_norm(a: &CMatrix, p: f64) -> Result<f64> {
    check_order(p)?;
    Ok(singular_values(a)
        .iter()
        .enumerate()
        .map(|(i, s)| ((i + 1) as f64).powf(1.0 / p) * s)
        .fold(0.0, f64::max))
}

/// Components of the block norm used for the Mickelsson–Rajeev topology.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub operator_norm_a: f64,
    pub operator_norm_d: f64,
    pub schatten_b: f64,
    pub schatten_c: f64,
    /// Schatten order used on the off-diagonal blocks (`2p`).
    pub order: f64,
    pub mr_norm: f64,
}

/// `‖a‖ + ‖d‖ + ‖b‖_{2p} + ‖c‖_{2p}` with operator 2-norms on the diagonal blocks.
pub fn mr_norm_report(g: &CMatrix, pol: &Polarization, p: f64) -> Result<NormReport> {
    check_order(p)?;
    let blocks = block_decompose(g, pol)?;
    let order = 2.0 * p;
    let operator_norm_a = operator_norm(&blocks.a);
    let operator_norm_d = operator_norm(&blocks.d);
    let schatten_b = schatten_norm(&blocks.b, order)?;
    let schatten_c = schatten_norm(&blocks.c, order)?;
    Ok(NormReport {
        operator_norm_a,
        operator_norm_d,
        schatten_b,
        schatten_c,
        order,
        mr_norm: operator_norm_a + operator_norm_d + schatten_b + schatten_c,
    })
}

/// Metric `d(g,h)` of the restricted group: the block norm of `g − h`.
pub fn mr_distance(g: &CMatrix, h: &CMatrix, pol: &Polarization, p: f64) -> Result<f64> {
    g.ensure_size(pol.dim(), "first operator")?;
    h.ensure_size(pol.dim(), "second operator")?;
    Ok(mr_norm_report(&(g - h), pol, p)?.mr_norm)
}
