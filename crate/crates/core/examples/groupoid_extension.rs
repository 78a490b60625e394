//! An action groupoid, a `μ_N` 2-cocycle on it, and the central extension
//! the cocycle defines; then an `S¹`-valued extension and the Lie-algebra
//! term of a smooth group cocycle.

use std::collections::BTreeMap;

use anomaly_lab::groupoid::{
    action_arrow, action_groupoid, axioms_check, central_extend, central_extend_continuous, centrality_check,
    cocycle_check, eta_from_omega, extension_diagnostics, ContinuousCocycle, CyclicCocycle, FiniteGroup,
    PhaseCocycle, RightAction,
};
use anomaly_lab::operator::{CMatrix, C64};

fn main() -> anomaly_lab::Result<()> {
    // Z_4 acting on its two cosets of {0, 2}.
    let z4 = FiniteGroup::cyclic(4)?;
    let act = RightAction::cosets(&z4, &[0, 2])?;
    let base = action_groupoid(&act, &z4)?;
    println!("A ⋊ G: {} objects, {} arrows, axiom failures {}", base.n_objects(), base.n_arrows(), axioms_check(&base).len());
    let (x, g) = action_arrow(5, &z4);
    println!("arrow 5 = (point {x}, element {g}): source {}, target {}", base.source(5), base.target(5));

    // The carry cocycle of Z_4, pulled back to the groupoid, valued in μ_2.
    let c = CyclicCocycle::from_fn(&base, 2, |x, y| (x % 4 + y % 4 >= 4) as i64)?;
    println!("cocycle defect: {}", cocycle_check(&base, &PhaseCocycle::Cyclic(c.clone()))?);
    let ext = central_extend(&base, &c)?;
    println!(
        "extension: {} arrows, centrality defect {}, diagnostics {}",
        ext.total().n_arrows(),
        centrality_check(&ext),
        extension_diagnostics(&ext)
    );
    println!("multiplication cocycle recovered: {}", ext.multiplication_cocycle()? == c);

    // The same cocycle as S¹ phases.
    let phases: BTreeMap<(usize, usize), C64> = c
        .values()
        .iter()
        .map(|(&k, &v)| (k, C64::from_polar(1.0, std::f64::consts::PI * v as f64)))
        .collect();
    let cont = central_extend_continuous(&base, &ContinuousCocycle::new(phases)?)?;
    let sample = [C64::from_polar(1.0, 0.3), C64::from_polar(1.0, -1.1)];
    println!(
        "S¹ extension: associativity {:.1e}, centrality {:.1e}",
        cont.associativity_check()?,
        cont.centrality_check(&sample)?
    );

    // η(X,Y) from a bilinear cocycle B(log g, log h) on diagonal matrices.
    let m = [[0.0, 1.0], [-0.5, 0.0]];
    let omega = |_: &(), a: &CMatrix, b: &CMatrix| -> Result<f64, String> {
        let la = [a.get(0, 0).re.ln(), a.get(1, 1).re.ln()];
        let lb = [b.get(0, 0).re.ln(), b.get(1, 1).re.ln()];
        Ok((0..2).flat_map(|i| (0..2).map(move |j| la[i] * m[i][j] * lb[j])).sum())
    };
    let x = CMatrix::from_real_diagonal(&[1.0, 0.0]);
    let y = CMatrix::from_real_diagonal(&[0.0, 1.0]);
    println!("η(X,Y) = {:.6} (B(X,Y) − B(Y,X) = 1.5)", eta_from_omega(omega, &x, &y, &(), 1e-3)?);
    Ok(())
}
