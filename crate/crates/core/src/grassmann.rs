//! Finite model of the Schatten Grassmannian: frames spanning `k`-planes in
//! `C^n`, the generalized determinant line `Det_p` with its `ω_p`-twisted
//! right action, the canonical dual section and the α consistency ratio.
//!
//! Only the big cell is charted: every operation that needs `w₊` invertible
//! fails with [`Error::ChartSingularity`] instead of switching charts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{
    column_projector, determinant, inverse, rank, schatten_norm, singular_values, CMatrix,
    MatrixJson, Polarization, C64,
};
use crate::regdet::{det_p, omega_p, UnitalPerturbation, SINGULAR_CUTOFF};

/// Rank threshold for frames: smallest singular value must exceed this.
pub const FRAME_RANK_TOL: f64 = 1e-10;
/// Tolerance for plane equality via projectors.
pub const PLANE_TOL: f64 = 1e-10;

/// A basis of a `k`-plane `W ⊆ C^n`, stored as an `n×k` matrix of full column rank.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    ambient: Polarization,
    matrix: CMatrix,
}

impl Frame {
    pub fn new(ambient: Polarization, matrix: CMatrix) -> Result<Self> {
        let (n, k) = (ambient.dim(), ambient.plus_dim());
        if matrix.rows() != n || matrix.cols() != k {
            return Err(Error::Shape(format!(
                "frame must be {n}x{k}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let smallest = singular_values(&matrix).last().copied().unwrap_or(f64::INFINITY);
        if k > 0 && smallest <= FRAME_RANK_TOL {
            return Err(Error::Shape(format!(
                "frame is rank deficient (smallest singular value {smallest:.3e})"
            )));
        }
        Ok(Frame { ambient, matrix })
    }

    /// The first `k` standard basis vectors.
    pub fn standard(ambient: Polarization) -> Self {
        let k = ambient.plus_dim();
        let matrix = CMatrix::from_fn(ambient.dim(), k, |i, j| {
            C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        });
        Frame { ambient, matrix }
    }

    pub fn ambient(&self) -> Polarization {
        self.ambient
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Orthogonal projector onto the spanned plane.
    pub fn projector(&self) -> CMatrix {
        column_projector(&self.matrix)
    }

    pub fn same_plane(&self, other: &Frame) -> bool {
        self.ambient == other.ambient
            && self.projector().max_abs_diff(&other.projector()) <= PLANE_TOL
    }

    /// Index of `pr_{H+}: W → H+`, i.e. `k − rank(w₊)`; zero on the big cell.
    pub fn projection_index(&self) -> usize {
        self.ambient.plus_dim() - rank(&w_plus(self), FRAME_RANK_TOL)
    }
}

/// Wire form: matrix JSON plus `plus_dim`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameJson {
    #[serde(flatten)]
    pub matrix: MatrixJson,
    pub plus_dim: usize,
}

impl TryFrom<FrameJson> for Frame {
    type Error = Error;

    fn try_from(j: FrameJson) -> Result<Frame> {
        let ambient = Polarization::new(j.matrix.rows, j.plus_dim)?;
        Frame::new(ambient, CMatrix::try_from(j.matrix)?)
    }
}

impl From<&Frame> for FrameJson {
    fn from(f: &Frame) -> Self {
        FrameJson {
            matrix: MatrixJson::from(&f.matrix),
            plus_dim: f.ambient.plus_dim(),
        }
    }
}

/// Projection of the frame onto `H+`: its top `k×k` block.
pub fn w_plus(w: &Frame) -> CMatrix {
    let k = w.ambient.plus_dim();
    w.matrix.block(0, 0, k, k)
}

/// `‖w₊ − 1‖_p`, the admissibility magnitude of the basis.
pub fn admissibility_report(w: &Frame, p: u32) -> Result<f64> {
    schatten_norm(&w_plus(w).shift_identity(C64::new(-1.0, 0.0)), p as f64)
}

fn check_invertible(t: &CMatrix, k: usize) -> Result<()> {
    t.ensure_size(k, "basis transformation")?;
    let d = determinant(t)?.norm();
    if d < SINGULAR_CUTOFF {
        return Err(Error::SingularTransform(d));
    }
    Ok(())
}

fn charted_plus(w: &Frame) -> Result<UnitalPerturbation> {
    let wp = w_plus(w);
    let d = determinant(&wp)?.norm();
    if d < SINGULAR_CUTOFF {
        return Err(Error::ChartSingularity(d));
    }
    UnitalPerturbation::from_operator(&wp)
}

/// Right action of `GL^p` on frames: `w ↦ w·t`.
pub fn frame_act(w: &Frame, t: &CMatrix) -> Result<Frame> {
    check_invertible(t, w.ambient.plus_dim())?;
    Ok(Frame {
        ambient: w.ambient,
        matrix: &w.matrix * t,
    })
}

/// A point `(w, λ)` of `St_p × C`, representing an element of `Det_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetLineElement {
    pub frame: Frame,
    pub lambda: C64,
}

/// `(w,λ)·t = (wt, λ ω_p(w₊,t)^{-1})`.
pub fn detline_act(e: &DetLineElement, t: &CMatrix, p: u32) -> Result<DetLineElement> {
    check_invertible(t, e.frame.ambient.plus_dim())?;
    let a = charted_plus(&e.frame)?;
    let b = UnitalPerturbation::from_operator(t)?;
    let omega = omega_p(&a, &b, p)?;
    Ok(DetLineElement {
        frame: frame_act(&e.frame, t)?,
        lambda: e.lambda / omega,
    })
}

/// The canonical section `ψ(w) = det_p(w₊)` of the dual line.
pub fn canonical_section(w: &Frame, p: u32) -> Result<C64> {
    let a = charted_plus(w)?;
    Ok(det_p(a.perturbation(), p)?.value)
}

/// The unsigned ratio `ω_p(w₊,t) / ω_p((g w q⁻¹)₊, q t q⁻¹)` that the
/// α-function must realize as `α(wt)/α(w)`.
pub fn alpha_ratio(g: &CMatrix, q: &CMatrix, w: &Frame, t: &CMatrix, p: u32) -> Result<C64> {
    let pol = w.ambient;
    let k = pol.plus_dim();
    check_invertible(g, pol.dim())?;
    check_invertible(q, k)?;
    check_invertible(t, k)?;
    let q_inv = inverse(q)?;
    let moved = Frame::new(pol, &(g * w.matrix()) * &q_inv)?;
    let numerator = omega_p(&charted_plus(w)?, &UnitalPerturbation::from_operator(t)?, p)?;
    let conj_t = &(q * t) * &q_inv;
    let denominator = omega_p(
        &charted_plus(&moved)?,
        &UnitalPerturbation::from_operator(&conj_t)?,
        p,
    )?;
    Ok(numerator / denominator)
}
