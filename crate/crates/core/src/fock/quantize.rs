//! Second quantization `dΓ`, the Schwinger term and Bogoliubov implementers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{inverse, matrix_exponential, CMatrix, Polarization, C64};

use super::space::{FockOperator, FockSpace};
use super::sparse::SparseOp;
use super::vacuum::SpectralBackground;

/// Tolerance for the post-construction checks of `dΓ`, relative to `max |X_ij|`.
pub const DGAMMA_TOL: f64 = 1e-10;
/// Largest off-scalar part accepted in `[dΓX, dΓY] − dΓ[X,Y]`.
pub const SCALARNESS_TOL: f64 = 1e-9;
/// Anti-Hermiticity tolerance for implementer generators.
const ANTI_HERMITIAN_TOL: f64 = 1e-10;

/// `Σ X_ij a*_i a_j` minus its vacuum expectation, as a sparse operator.
pub(crate) fn d_gamma_sparse(space: &FockSpace, x: &CMatrix) -> Result<SparseOp> {
    let m = space.modes();
    x.ensure_size(m, "one-particle operator")?;
    let vac = space.vacuum_state();
    let sea: C64 = (0..m).filter(|&i| vac & (1 << i) != 0).map(|i| x.get(i, i)).sum();
    let cols = (0..space.dim())
        .map(|s| {
            let mut col = vec![(s, -sea)];
            for j in 0..m {
                let Some((s1, sg1)) = space.annihilate(j, s) else { continue };
                for i in 0..m {
                    let xij = x.get(i, j);
                    if xij == C64::new(0.0, 0.0) {
                        continue;
                    }
                    if let Some((t, sg2)) = space.create(i, s1) {
                        col.push((t, xij * (sg1 * sg2)));
                    }
                }
            }
            col
        })
        .collect();
    let op = SparseOp::from_columns(space.dim(), cols);
    verify_d_gamma(space, x, &op)?;
    Ok(op)
}

/// Checks `[dΓ(X), ψ*(e_j)] = ψ*(X e_j)` for every mode and `⟨0|dΓ(X)|0⟩ = 0`.
fn verify_d_gamma(space: &FockSpace, x: &CMatrix, op: &SparseOp) -> Result<()> {
    let m = space.modes();
    let tol = DGAMMA_TOL * x.max_abs().max(1.0);
    let one = C64::new(1.0, 0.0);
    for j in 0..m {
        let mut e = vec![C64::new(0.0, 0.0); m];
        e[j] = one;
        let cj = space.psi_star_sparse(&e);
        let xe = space.psi_star_sparse(&x.column(j));
        let defect = op.mul(&cj).linear(one, &cj.mul(op), -one).linear(one, &xe, -one);
        let worst = defect.distance_to_scalar(C64::new(0.0, 0.0));
        if worst > tol {
            return Err(Error::Consistency(format!(
                "dΓ commutator condition fails on mode {j} by {worst:.3e}"
            )));
        }
    }
    let vac = space.vacuum_state();
    let expectation = op.entry(vac, vac).norm();
    if expectation > tol {
        return Err(Error::Consistency(format!(
            "dΓ vacuum expectation is {expectation:.3e}, not zero"
        )));
    }
    Ok(())
}

/// Normal-ordered second quantization of a one-particle operator.
pub fn d_gamma(space: &FockSpace, x: &CMatrix) -> Result<FockOperator> {
    Ok(FockOperator::new(*space, d_gamma_sparse(space, x)?.to_dense()))
}

/// Scalar `c` with `[dΓX, dΓY] − dΓ[X,Y] = c·1`, plus the measured off-scalar residue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwingerTerm {
    pub value: C64,
    pub residue: f64,
}

pub fn schwinger_term(space: &FockSpace, x: &CMatrix, y: &CMatrix) -> Result<SchwingerTerm> {
    let dx = d_gamma_sparse(space, x)?;
    let dy = d_gamma_sparse(space, y)?;
    let dxy = d_gamma_sparse(space, &x.commutator(y))?;
    let one = C64::new(1.0, 0.0);
    let s = dx.mul(&dy).linear(one, &dy.mul(&dx), -one).linear(one, &dxy, -one);
    let value = s.trace() / space.dim() as f64;
    let residue = s.distance_to_scalar(value);
    if residue > SCALARNESS_TOL {
        return Err(Error::Scalarness(residue));
    }
    Ok(SchwingerTerm { value, residue })
}

/// Schwinger term of the pair under each background's sign polarization
/// `ε = sign(D)`: the finite sample of the background-dependent cocycle.
pub fn schwinger_over_backgrounds(
    x: &CMatrix,
    y: &CMatrix,
    backgrounds: &[SpectralBackground],
) -> Result<Vec<C64>> {
    backgrounds
        .iter()
        .map(|bg| {
            let (basis, plus_dim) = bg.sign_basis()?;
            let m = bg.dim();
            x.ensure_size(m, "first generator")?;
            y.ensure_size(m, "second generator")?;
            let space = FockSpace::new(m, Polarization::new(m, plus_dim)?)?;
            let rotate = |a: &CMatrix| &(&basis.adjoint() * a) * &basis;
            Ok(schwinger_term(&space, &rotate(x), &rotate(y))?.value)
        })
        .collect()
}

/// `Γ = exp(dΓ(X))` for anti-Hermitian `X`; implements `e^X` on Fock space.
pub fn bogoliubov_implement(space: &FockSpace, x: &CMatrix) -> Result<FockOperator> {
    x.ensure_size(space.modes(), "generator")?;
    let violation = (x + &x.adjoint()).max_abs();
    if violation > ANTI_HERMITIAN_TOL {
        return Err(Error::Symmetry {
            what: "anti-Hermitian generator",
            violation,
        });
    }
    let generator = d_gamma(space, x)?;
    Ok(FockOperator::new(*space, matrix_exponential(generator.matrix())?))
}

/// `max |Γ ψ*(v) Γ⁻¹ − ψ*(g v)|` for an implementer `Γ` of the one-particle map `g`.
pub fn conjugation_defect(gamma: &FockOperator, g: &CMatrix, v: &[C64]) -> Result<f64> {
    let space = gamma.space();
    g.ensure_size(space.modes(), "one-particle map")?;
    let lhs = &(gamma.matrix() * space.psi_star(v)?.matrix()) * &inverse(gamma.matrix())?;
    let rhs = space.psi_star(&g.mul_vec(v))?;
    Ok(lhs.max_abs_diff(rhs.matrix()))
}
