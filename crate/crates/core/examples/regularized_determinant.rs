//! `det_p` of a small perturbation at several orders, the trace series it
//! agrees with, and the failure of multiplicativity measured by `γ_p` and
//! `ω_p`.

use anomaly_lab::operator::{spectral_radius, CMatrix, C64};
use anomaly_lab::random;
use anomaly_lab::regdet::{det_p, gamma_p, log_det_p_series, omega_p, r_p, UnitalPerturbation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anomaly_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random::matrix_with_norm(&mut rng, 4, 0.1);
    println!("A: 4x4, spectral radius {:.4}", spectral_radius(&a)?);

    for p in 1..=4 {
        let d = det_p(&a, p)?;
        let series = log_det_p_series(&a, p, 40)?;
        println!(
            "p={p}: det_p = {:.12}, log = {:.3e}, |log - series| = {:.2e}, route discrepancy {:.1e}",
            d.value,
            d.log_value,
            (d.log_value - series).norm(),
            d.dual_discrepancy
        );
    }

    // R_p(A) is the perturbation whose ordinary determinant is det_p.
    let r2 = r_p(&a, 2)?;
    println!("‖R_2(A)‖_max = {:.3e} (second order in A)", r2.max_abs());

    // Scalar check: det_2(1.5) = 1.5·e^{-0.5}.
    let half = CMatrix::scalar(C64::new(0.5, 0.0));
    println!("det_2(1 + 0.5) = {:.15} (1.5·e^-0.5 = {:.15})", det_p(&half, 2)?.value.re, 1.5 * (-0.5f64).exp());

    let x = UnitalPerturbation::new(random::matrix_with_norm(&mut rng, 4, 0.4))?;
    let y = UnitalPerturbation::new(random::matrix_with_norm(&mut rng, 4, 0.4))?;
    for p in 1..=3 {
        println!(
            "p={p}: γ_p(A,B) = {:.6}, ω_p(A,B) = {:.8}",
            gamma_p(&x, &y, p)?,
            omega_p(&x, &y, p)?
        );
    }
    Ok(())
}
