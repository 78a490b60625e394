//! Nerves of small groupoids, `δ² = 0`, and cohomology groups with `Z_N`
//! coefficients, including the classes of the extensions they classify.

use anomaly_lab::cohomology::{coboundary, cohomology_group, extension_class, smith_mod, Cochain, ModMatrix, Nerve};
use anomaly_lab::groupoid::{action_groupoid, central_extend, CyclicCocycle, FiniteGroup, RightAction};

fn main() -> anomaly_lab::Result<()> {
    for n in [2usize, 3, 4] {
        let g = FiniteGroup::cyclic(n)?;
        let bg = action_groupoid(&RightAction::trivial(&g, 1), &g)?;
        let nerve = Nerve::new(&bg, 3)?;
        let counts: Vec<usize> = (0..=3).map(|p| nerve.count(p)).collect();
        let h1 = cohomology_group(&bg, 1, n as u32)?;
        let h2 = cohomology_group(&bg, 2, n as u32)?;
        println!(
            "BZ_{n}: cells {counts:?}, H¹ = {:?}, H² = {:?}, identities broken {}",
            h1.invariant_factors,
            h2.invariant_factors,
            nerve.simplicial_identity_check().len()
        );
    }

    // The free action of Z_2 on itself is equivalent to a point.
    let z2 = FiniteGroup::cyclic(2)?;
    let free = action_groupoid(&RightAction::regular(&z2), &z2)?;
    println!("Z_2 acting freely: H² trivial = {}", cohomology_group(&free, 2, 2)?.is_trivial());

    // δ² on a 1-cochain of BZ_2.
    let bz2 = action_groupoid(&RightAction::trivial(&z2, 1), &z2)?;
    let nerve = Nerve::new(&bz2, 3)?;
    let mut f = Cochain::zero(&nerve, 1, 4);
    f.values[1] = 1;
    let df = coboundary(&f, &nerve)?;
    println!("δf = {:?}, δ²f = {:?}", df.values, coboundary(&df, &nerve)?.values);

    // Z_4 as the extension of Z_2 by μ_2 is the nontrivial class.
    let carry = CyclicCocycle::from_fn(&bz2, 2, |x, y| (x == 1 && y == 1) as i64)?;
    let class = extension_class(&central_extend(&bz2, &carry)?)?;
    println!("class of Z_4 → Z_2: {:?} in {:?}", class.class, class.invariant_factors);

    // Smith normal form over Z_6.
    let mut m = ModMatrix::zeros(2, 2, 6);
    m.set(0, 0, 2);
    m.set(0, 1, 4);
    m.set(1, 0, 3);
    let s = smith_mod(m, false, false);
    println!("Smith form of [[2,4],[3,0]] mod 6: diagonal {:?}, rank {}", s.diagonal, s.rank());
    Ok(())
}
