use crate::error::{Error, Result};
use crate::operator::{inner_product, vector_norm, CMatrix, Polarization, C64};

use super::sparse::SparseOp;

/// Largest supported number of modes (`2^12 = 4096` basis states).
pub const MAX_MODES: usize = 12;

/// The `2^m`-dimensional Fock representation of the CAR algebra over `C^m`,
/// together with the polarization that selects its vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    modes: usize,
    pol: Polarization,
}

fn parity_below(state: usize, mode: usize) -> f64 {
    if (state & ((1usize << mode) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl FockSpace {
    pub fn new(modes: usize, pol: Polarization) -> Result<Self> {
        if !(1..=MAX_MODES).contains(&modes) {
            return Err(Error::Size(format!(
                "{modes} modes requested; supported range is 1..={MAX_MODES}"
            )));
        }
        if pol.dim() != modes {
            return Err(Error::Shape(format!(
                "polarization of C^{} used for {modes} modes",
                pol.dim()
            )));
        }
        Ok(FockSpace { modes, pol })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn polarization(&self) -> Polarization {
        self.pol
    }

    pub fn dim(&self) -> usize {
        1 << self.modes
    }

    /// `a*_i |s⟩ = sign · |t⟩`, or `None` when mode `i` is already occupied.
    pub fn create(&self, mode: usize, state: usize) -> Option<(usize, f64)> {
        if state & (1 << mode) != 0 {
            None
        } else {
            Some((state | (1 << mode), parity_below(state, mode)))
        }
    }

    /// `a_i |s⟩ = sign · |t⟩`, or `None` when mode `i` is empty.
    pub fn annihilate(&self, mode: usize, state: usize) -> Option<(usize, f64)> {
        if state & (1 << mode) == 0 {
            None
        } else {
            Some((state ^ (1 << mode), parity_below(state, mode)))
        }
    }

    /// Occupation bitmask of the polarization vacuum: all `H-` modes filled.
    pub fn vacuum_state(&self) -> usize {
        (self.pol.plus_dim()..self.modes).fold(0, |s, i| s | (1 << i))
    }

    fn check_vector(&self, v: &[C64]) -> Result<()> {
        if v.len() != self.modes {
            return Err(Error::Shape(format!(
                "one-particle vector has length {}, expected {}",
                v.len(),
                self.modes
            )));
        }
        Ok(())
    }

    pub(crate) fn psi_star_sparse(&self, v: &[C64]) -> SparseOp {
        let cols = (0..self.dim())
            .map(|s| {
                (0..self.modes)
                    .filter(|&i| v[i] != C64::new(0.0, 0.0))
                    .filter_map(|i| self.create(i, s).map(|(t, sg)| (t, v[i] * sg)))
                    .collect()
            })
            .collect();
        SparseOp::from_columns(self.dim(), cols)
    }

    /// Creation operator `ψ*(v) = Σ v_i a*_i`, linear in `v`.
    pub fn psi_star(&self, v: &[C64]) -> Result<FockOperator> {
        self.check_vector(v)?;
        Ok(FockOperator::new(*self, self.psi_star_sparse(v).to_dense()))
    }

    /// Annihilation operator `ψ(v) = ψ*(v)*`, conjugate-linear in `v`.
    pub fn psi(&self, v: &[C64]) -> Result<FockOperator> {
        let star = self.psi_star(v)?;
        Ok(FockOperator::new(*self, star.matrix.adjoint()))
    }

    pub fn creator(&self, mode: usize) -> Result<FockOperator> {
        self.psi_star(&self.unit(mode)?)
    }

    pub fn annihilator(&self, mode: usize) -> Result<FockOperator> {
        self.psi(&self.unit(mode)?)
    }

    fn unit(&self, mode: usize) -> Result<Vec<C64>> {
        if mode >= self.modes {
            return Err(Error::Shape(format!("mode {mode} out of range 0..{}", self.modes)));
        }
        let mut e = vec![C64::new(0.0, 0.0); self.modes];
        e[mode] = C64::new(1.0, 0.0);
        Ok(e)
    }

    /// `ψ*(v)|Φ⟩` without materializing the operator.
    pub fn apply_psi_star(&self, v: &[C64], state: &FockVector) -> Result<FockVector> {
        self.check_vector(v)?;
        self.check_state(state)?;
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for (s, &amp) in state.amplitudes.iter().enumerate() {
            if amp == C64::new(0.0, 0.0) {
                continue;
            }
            for (i, &vi) in v.iter().enumerate() {
                if let Some((t, sg)) = self.create(i, s) {
                    out[t] += vi * amp * sg;
                }
            }
        }
        Ok(FockVector { amplitudes: out })
    }

    pub(crate) fn check_state(&self, state: &FockVector) -> Result<()> {
        if state.amplitudes.len() != self.dim() {
            return Err(Error::Shape(format!(
                "Fock vector has {} amplitudes, space has dimension {}",
                state.amplitudes.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn vacuum(&self) -> FockVector {
        FockVector::basis(self.dim(), self.vacuum_state())
    }

    /// The state `|∅⟩` with no mode occupied.
    pub fn empty_state(&self) -> FockVector {
        FockVector::basis(self.dim(), 0)
    }
}

pub fn build_car(modes: usize, pol: Polarization) -> Result<FockSpace> {
    FockSpace::new(modes, pol)
}

pub fn vacuum(space: &FockSpace) -> FockVector {
    space.vacuum()
}

/// Amplitudes over the occupation basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    pub amplitudes: Vec<C64>,
}

impl FockVector {
    pub fn basis(dim: usize, state: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[state] = C64::new(1.0, 0.0);
        FockVector { amplitudes }
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &FockVector) -> C64 {
        inner_product(&self.amplitudes, &other.amplitudes)
    }
}

/// An endomorphism of a [`FockSpace`], stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    space: FockSpace,
    matrix: CMatrix,
}

impl FockOperator {
    pub fn new(space: FockSpace, matrix: CMatrix) -> Self {
        debug_assert!(matrix.rows() == space.dim() && matrix.cols() == space.dim());
        FockOperator { space, matrix }
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        self.space.check_state(v)?;
        Ok(FockVector {
            amplitudes: self.matrix.mul_vec(&v.amplitudes),
        })
    }

    pub fn anticommutator(&self, other: &FockOperator) -> CMatrix {
        &(&self.matrix * &other.matrix) + &(&other.matrix * &self.matrix)
    }
}
