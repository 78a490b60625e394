//! Schwinger terms on a small Fock space: the raising/lowering pair, a random
//! anti-Hermitian pair and a block-diagonal pair (which has none).

use anomaly_lab::fock::{d_gamma, schwinger_term, FockSpace};
use anomaly_lab::operator::{CMatrix, Polarization};
use anomaly_lab::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anomaly_lab::Result<()> {
    let two = FockSpace::new(2, Polarization::new(2, 1)?)?;
    let raise = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let lower = CMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let t = schwinger_term(&two, &raise, &lower)?;
    println!("m=2, k=1: c(E12, E21) = {:.3} (residue {:.1e})", t.value, t.residue);

    let number = d_gamma(&two, &CMatrix::identity(2))?;
    println!("dΓ(1) on the basis ∅,1,2,12: {:?}", (0..4).map(|i| number.matrix().get(i, i).re).collect::<Vec<_>>());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let space = FockSpace::new(4, Polarization::new(4, 2)?)?;
    let x = random::anti_hermitian(&mut rng, 4);
    let y = random::anti_hermitian(&mut rng, 4);
    let xy = schwinger_term(&space, &x, &y)?;
    let yx = schwinger_term(&space, &y, &x)?;
    println!("m=4, k=2: c(X,Y) = {:.10}, c(Y,X) = {:.10}", xy.value, yx.value);

    let bx = random::block_diagonal_anti_hermitian(&mut rng, 4, 2);
    let by = random::block_diagonal_anti_hermitian(&mut rng, 4, 2);
    println!("block-diagonal pair: |c| = {:.1e}", schwinger_term(&space, &bx, &by)?.value.norm());
    Ok(())
}
