//! Spectral backgrounds, the local vacuum lines over spectral windows and
//! the triple-overlap isomorphism that makes them a gerbe.

use crate::error::{Error, Result};
use crate::operator::{determinant, hermitian_eigensystem, unitarity_violation, CMatrix, Eigensystem, C64};

use super::space::{FockSpace, FockVector};

/// Minimum distance between a level (or zero, for the sign polarization) and the spectrum.
pub const LEVEL_MARGIN: f64 = 1e-8;
/// Unitarity tolerance for window rotations.
pub const UNITARY_TOL: f64 = 1e-10;
/// Modulus tolerance for the triple-overlap witness.
const WITNESS_TOL: f64 = 1e-10;

/// A Hermitian one-particle Hamiltonian with its eigensystem, computed once.
#[derive(Clone, Debug)]
pub struct SpectralBackground {
    d: CMatrix,
    eig: Eigensystem,
}

impl SpectralBackground {
    pub fn new(d: CMatrix) -> Result<Self> {
        let eig = hermitian_eigensystem(&d)?;
        Ok(SpectralBackground { d, eig })
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn operator(&self) -> &CMatrix {
        &self.d
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eig.vectors
    }

    /// Fails when `level` sits within [`LEVEL_MARGIN`] of the spectrum.
    pub fn check_level(&self, level: f64) -> Result<()> {
        match self
            .eig
            .values
            .iter()
            .find(|&&e| (e - level).abs() <= LEVEL_MARGIN)
        {
            Some(&eigenvalue) => Err(Error::CoverMembership { level, eigenvalue }),
            None => Ok(()),
        }
    }

    /// Indices of eigenvalues strictly inside `(lo, hi)`, ascending.
    fn window(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.eig.values[i] > lo && self.eig.values[i] < hi)
            .collect()
    }

    /// Unitary whose first `k` columns span the positive spectral subspace,
    /// followed by the negative one; returns it with `k`.
    pub fn sign_basis(&self) -> Result<(CMatrix, usize)> {
        if let Some(&e) = self.eig.values.iter().find(|e| e.abs() <= LEVEL_MARGIN) {
            return Err(Error::Gap(e));
        }
        let n = self.dim();
        let order: Vec<usize> = (0..n)
            .filter(|&i| self.eig.values[i] > 0.0)
            .chain((0..n).filter(|&i| self.eig.values[i] < 0.0))
            .collect();
        let plus = order.iter().filter(|&&i| self.eig.values[i] > 0.0).count();
        let columns: Vec<Vec<C64>> = order.iter().map(|&i| self.eig.vectors.column(i)).collect();
        Ok((CMatrix::from_columns(n, &columns), plus))
    }
}

/// The top exterior power of the spectral subspace between two levels,
/// represented by an orthonormal eigenframe and a phase. The element
/// `(∧ frame) / phase` is unchanged by [`line_transition`].
#[derive(Clone, Debug)]
pub struct VacuumLine {
    pub background: SpectralBackground,
    pub lo: f64,
    pub hi: f64,
    pub frame: CMatrix,
    pub phase: C64,
}

impl VacuumLine {
    pub fn window_dim(&self) -> usize {
        self.frame.cols()
    }
}

pub fn vacuum_line(bg: &SpectralBackground, lo: f64, hi: f64) -> Result<VacuumLine> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("window ({lo}, {hi}) is empty or inverted")));
    }
    bg.check_level(lo)?;
    bg.check_level(hi)?;
    let columns: Vec<Vec<C64>> = bg
        .window(lo, hi)
        .into_iter()
        .map(|i| bg.eig.vectors.column(i))
        .collect();
    Ok(VacuumLine {
        background: bg.clone(),
        lo,
        hi,
        frame: CMatrix::from_columns(bg.dim(), &columns),
        phase: C64::new(1.0, 0.0),
    })
}

/// Re-expresses the line in the rotated frame `frame · R`, multiplying the
/// phase by `det R`.
pub fn line_transition(line: &VacuumLine, rotation: &CMatrix) -> Result<VacuumLine> {
    rotation.ensure_size(line.window_dim(), "window rotation")?;
    let violation = unitarity_violation(rotation);
    if violation > UNITARY_TOL {
        return Err(Error::Symmetry {
            what: "window rotation unitarity",
            violation,
        });
    }
    Ok(VacuumLine {
        frame: &line.frame * rotation,
        phase: line.phase * determinant(rotation)?,
        ..line.clone()
    })
}

/// The scalar `w` with `e₁₂ ∧ e₂₃ = w · e₁₃` for lines over adjacent windows
/// `(l1,l2)`, `(l2,l3)` and their union `(l1,l3)`.
pub fn triple_witness(l12: &VacuumLine, l23: &VacuumLine, l13: &VacuumLine) -> Result<C64> {
    if l12.hi != l23.lo || l12.lo != l13.lo || l23.hi != l13.hi {
        return Err(Error::Domain(format!(
            "windows ({},{}), ({},{}), ({},{}) are not adjacent with common union",
            l12.lo, l12.hi, l23.lo, l23.hi, l13.lo, l13.hi
        )));
    }
    if l12.window_dim() + l23.window_dim() != l13.window_dim() {
        return Err(Error::Consistency(format!(
            "window dimensions {} + {} do not add to {}",
            l12.window_dim(),
            l23.window_dim(),
            l13.window_dim()
        )));
    }
    let joint = l12.frame.hstack(&l23.frame)?;
    let change = &l13.frame.adjoint() * &joint;
    Ok(determinant(&change)? * l13.phase / (l12.phase * l23.phase))
}

/// Builds the three lines of `l1 < l2 < l3` and returns their triple witness,
/// which must be a unit complex number.
pub fn gerbe_triple_check(bg: &SpectralBackground, l1: f64, l2: f64, l3: f64) -> Result<C64> {
    let l12 = vacuum_line(bg, l1, l2)?;
    let l23 = vacuum_line(bg, l2, l3)?;
    let l13 = vacuum_line(bg, l1, l3)?;
    let w = triple_witness(&l12, &l23, &l13)?;
    if (w.norm() - 1.0).abs() > WITNESS_TOL {
        return Err(Error::Consistency(format!(
            "triple witness has modulus {}",
            w.norm()
        )));
    }
    Ok(w)
}

/// The Dirac sea at level `λ`: `ψ*(v₁)⋯ψ*(v_r)|∅⟩` over the eigenvectors of
/// eigenvalue below `λ`, ascending.
pub fn vacuum_at_level(space: &FockSpace, bg: &SpectralBackground, level: f64) -> Result<FockVector> {
    if bg.dim() != space.modes() {
        return Err(Error::Shape(format!(
            "background on C^{} for a {}-mode space",
            bg.dim(),
            space.modes()
        )));
    }
    bg.check_level(level)?;
    let filled = bg.window(f64::NEG_INFINITY, level);
    let mut state = space.empty_state();
    for &i in filled.iter().rev() {
        state = space.apply_psi_star(&bg.eig.vectors.column(i), &state)?;
    }
    Ok(state)
}
