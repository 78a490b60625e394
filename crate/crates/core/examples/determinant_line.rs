//! Acting on the determinant line `Det_p` over the big cell of a small
//! Grassmannian, and checking that the α ratio is multiplicative.

use anomaly_lab::grassmann::{
    admissibility_report, alpha_ratio, canonical_section, detline_act, frame_act, DetLineElement, Frame,
};
use anomaly_lab::operator::{CMatrix, Polarization, C64};
use anomaly_lab::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anomaly_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (n, k, p) = (5, 2, 2);
    let pol = Polarization::new(n, k)?;

    // A frame with w₊ close to the identity and an arbitrary lower block.
    let top = random::matrix_with_norm(&mut rng, k, 0.3).shift_identity(C64::new(1.0, 0.0));
    let bottom = random::complex_matrix(&mut rng, n - k, k).scale_real(0.5);
    let w = Frame::new(pol, CMatrix::from_fn(n, k, |i, j| if i < k { top.get(i, j) } else { bottom.get(i - k, j) }))?;
    println!("‖w₊ − 1‖_{p} = {:.4}", admissibility_report(&w, p)?);
    println!("canonical section ψ(w) = det_p(w₊) = {:.8}", canonical_section(&w, p)?);

    let t1 = random::unital(&mut rng, k, 0.5);
    let t2 = random::unital(&mut rng, k, 0.5);
    let e = DetLineElement { frame: w.clone(), lambda: C64::new(1.0, 0.0) };
    let stepwise = detline_act(&detline_act(&e, &t1, p)?, &t2, p)?;
    let direct = detline_act(&e, &(&t1 * &t2), p)?;
    println!("(e·t1)·t2 λ = {:.12}", stepwise.lambda);
    println!("e·(t1 t2)  λ = {:.12}", direct.lambda);
    println!("same plane as w: {}", stepwise.frame.same_plane(&w));

    let g = random::unital(&mut rng, n, 0.3);
    let q = random::unital(&mut rng, k, 0.5);
    let whole = alpha_ratio(&g, &q, &w, &(&t1 * &t2), p)?;
    let split = alpha_ratio(&g, &q, &w, &t1, p)? * alpha_ratio(&g, &q, &frame_act(&w, &t1)?, &t2, p)?;
    println!("α ratio over t1 t2 = {whole:.12}");
    println!("product of steps  = {split:.12}");
    Ok(())
}
