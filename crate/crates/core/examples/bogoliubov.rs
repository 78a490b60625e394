//! Implementing a one-particle unitary `g = e^X` on Fock space and checking
//! `Γ ψ*(v) Γ⁻¹ = ψ*(g v)`.

use anomaly_lab::fock::{bogoliubov_implement, conjugation_defect, FockSpace};
use anomaly_lab::operator::{matrix_exponential, unitarity_violation, Polarization};
use anomaly_lab::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anomaly_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let space = FockSpace::new(4, Polarization::new(4, 1)?)?;
    let x = random::anti_hermitian(&mut rng, 4);
    let g = matrix_exponential(&x)?;
    let gamma = bogoliubov_implement(&space, &x)?;
    println!("Fock dimension {}, implementer unitarity defect {:.1e}", space.dim(), unitarity_violation(gamma.matrix()));

    let worst = (0..10)
        .map(|_| conjugation_defect(&gamma, &g, &random::complex_vector(&mut rng, 4)))
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))?;
    println!("largest conjugation defect over 10 vectors: {worst:.2e}");
    Ok(())
}
