//! Splitting a global cocycle over a cover of the group into chart-local
//! data, gluing it back, and confirming that the class survives the trip.

use anomaly_lab::cohomology::{extension_class, same_class};
use anomaly_lab::groupoid::{glue_local_data, CoverJson};
use anomaly_lab::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anomaly_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let modulus = 4;
    let inst = random::refined_cover(&mut rng, 6, 3, modulus)?;
    let d = &inst.data;
    println!("group {:?} acting on {} points; charts {:?}", inst.kind, d.action.points(), d.charts);
    println!("{} transition values, {} local cocycle values", d.transitions.len(), d.omega.len());

    let ext = glue_local_data(d, modulus)?;
    let base = ext.base();
    let glued = ext.multiplication_cocycle()?;
    println!("glued extension: {} arrows over {}", ext.total().n_arrows(), base.n_arrows());
    println!("glued cocycle equals the source exactly: {}", glued == inst.global);
    println!("same H² class as the source: {}", same_class(base, &glued, &inst.global)?);
    let class = extension_class(&ext)?;
    println!("H² = {:?}, class {:?}", class.invariant_factors, class.class);

    // The wire form consumed by `anomaly-lab compute glue`.
    let json = serde_json::to_string(&CoverJson::from_data(d, Some(modulus)))?;
    println!("cover JSON: {} bytes", json.len());
    Ok(())
}
