//! Vacuum lines over spectral windows of a Hermitian background: window
//! dimensions, the unit triple-overlap witness, a frame rotation, and the
//! Dirac sea at two levels.

use anomaly_lab::fock::{
    gerbe_triple_check, line_transition, triple_witness, vacuum_at_level, vacuum_line, FockSpace,
    SpectralBackground,
};
use anomaly_lab::operator::{inner_product, Polarization};
use anomaly_lab::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anomaly_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let bg = SpectralBackground::new(random::hermitian(&mut rng, 5).scale_real(2.0))?;
    println!("spectrum: {:?}", bg.eigenvalues().iter().map(|e| format!("{e:.3}")).collect::<Vec<_>>());

    // Levels placed between eigenvalues.
    let ev = bg.eigenvalues();
    let (l1, l2, l3) = (ev[0] - 0.5, 0.5 * (ev[1] + ev[2]), ev[4] + 0.5);
    let (a, b, c) = (vacuum_line(&bg, l1, l2)?, vacuum_line(&bg, l2, l3)?, vacuum_line(&bg, l1, l3)?);
    println!("window dims {} + {} = {}", a.window_dim(), b.window_dim(), c.window_dim());
    let w = gerbe_triple_check(&bg, l1, l2, l3)?;
    println!("triple witness {w:.6}, |w| = {:.12}", w.norm());

    // Rotating a frame changes the witness only through the recorded phase.
    let rot = random::unitary(&mut rng, b.window_dim())?;
    let rotated = line_transition(&b, &rot)?;
    println!("after rotating the upper window: {:.6}", triple_witness(&a, &rotated, &c)?);

    let space = FockSpace::new(5, Polarization::new(5, 5)?)?;
    let low = vacuum_at_level(&space, &bg, l2)?;
    let high = vacuum_at_level(&space, &bg, l3)?;
    println!("vacua at {l2:.3} and {l3:.3}: norms {:.12}, {:.12}", low.norm(), high.norm());
    let mut filled = low;
    for i in (0..5).filter(|&i| ev[i] > l2 && ev[i] < l3).rev() {
        filled = space.apply_psi_star(&bg.eigenvectors().column(i), &filled)?;
    }
    println!("|⟨vac_high, ψ*(v)⋯ vac_low⟩| = {:.12}", high.inner(&filled).norm());
    let v0 = bg.eigenvectors().column(0);
    println!("eigenvectors orthonormal: ⟨v0,v0⟩ = {:.12}", inner_product(&v0, &v0).re);
    Ok(())
}
