//! Seeded instance generators shared by the verification harness, the
//! examples and the tests.
//!
//! Every generator takes a caller-owned [`Rng`]; the harness always uses
//! `ChaCha8Rng::seed_from_u64`, whose output is fixed across platforms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groupoid::{
    action_groupoid, coboundary_twist, refine_global_cocycle, CyclicCocycle, FiniteGroup, LocalExtensionData,
    RightAction,
};
use crate::operator::{matrix_exponential, operator_norm, CMatrix, C64};

/// Complex number with real and imaginary parts uniform in `[-1, 1]`.
pub fn complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

pub fn complex_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn complex_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex(rng)).collect()
}

/// A random matrix rescaled to operator norm exactly `norm`, which bounds its
/// spectral radius by the same amount.
pub fn matrix_with_norm<R: Rng>(rng: &mut R, n: usize, norm: f64) -> CMatrix {
    let a = complex_matrix(rng, n, n);
    let s = operator_norm(&a);
    if s == 0.0 {
        a
    } else {
        a.scale_real(norm / s)
    }
}

pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let a = complex_matrix(rng, n, n);
    (&a + &a.adjoint()).scale_real(0.5)
}

pub fn anti_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let a = complex_matrix(rng, n, n);
    (&a - &a.adjoint()).scale_real(0.5)
}

/// `exp(X)` for a random anti-Hermitian `X`.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> Result<CMatrix> {
    matrix_exponential(&anti_hermitian(rng, n))
}

/// `1 + A` with `‖A‖` uniform in `(0, max_norm]`; invertible when
/// `max_norm < 1`.
pub fn unital<R: Rng>(rng: &mut R, n: usize, max_norm: f64) -> CMatrix {
    let norm = rng.gen_range(0.0..max_norm).max(f64::EPSILON);
    matrix_with_norm(rng, n, norm).shift_identity(C64::new(1.0, 0.0))
}

/// Block-diagonal anti-Hermitian matrix for the splitting `k + (n − k)`.
pub fn block_diagonal_anti_hermitian<R: Rng>(rng: &mut R, n: usize, k: usize) -> CMatrix {
    let x = anti_hermitian(rng, n);
    CMatrix::from_fn(n, n, |i, j| if (i < k) == (j < k) { x.get(i, j) } else { C64::new(0.0, 0.0) })
}

/// The families of small groups the generators draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    /// `Z_a × Z_b`.
    Product(usize, usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
}

impl GroupKind {
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Cyclic(n) => n,
            GroupKind::Product(a, b) => a * b,
            GroupKind::Dihedral(n) => 2 * n,
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match *self {
            GroupKind::Cyclic(n) => FiniteGroup::cyclic(n),
            GroupKind::Product(a, b) => Ok(FiniteGroup::direct_product(
                &FiniteGroup::cyclic(a)?,
                &FiniteGroup::cyclic(b)?,
            )),
            GroupKind::Dihedral(n) => FiniteGroup::dihedral(n),
        }
    }

    /// A homomorphism onto a cyclic group `Z_m`, as `(images, m)`:
    /// the identity for `Z_n`, the first projection for `Z_a × Z_b` and the
    /// reflection sign for dihedral groups.
    pub fn character(&self) -> (Vec<usize>, usize) {
        match *self {
            GroupKind::Cyclic(n) => ((0..n).collect(), n),
            GroupKind::Product(a, b) => ((0..a * b).map(|x| x / b).collect(), a),
            GroupKind::Dihedral(n) => ((0..2 * n).map(|x| x / n).collect(), 2),
        }
    }
}

/// Group kinds of order at most `max_order`.
pub fn group_kinds(max_order: usize) -> Vec<GroupKind> {
    let mut kinds: Vec<GroupKind> = (1..=max_order).map(GroupKind::Cyclic).collect();
    for (a, b) in [(2, 2), (2, 3), (2, 4), (4, 2)] {
        if a * b <= max_order {
            kinds.push(GroupKind::Product(a, b));
        }
    }
    for n in 3..=max_order / 2 {
        kinds.push(GroupKind::Dihedral(n));
    }
    kinds
}

pub fn group_kind<R: Rng>(rng: &mut R, max_order: usize) -> Result<GroupKind> {
    group_kinds(max_order)
        .choose(rng)
        .copied()
        .ok_or_else(|| Error::Domain(format!("no group of order ≤ {max_order}")))
}

/// A disjoint union of coset spaces `H\G`, for `H` cyclic or all of `G`,
/// with at most `max_points` points in total and at least one orbit.
pub fn action<R: Rng>(rng: &mut R, group: &FiniteGroup, max_points: usize) -> Result<RightAction> {
    if max_points == 0 {
        return Err(Error::Domain("an action needs at least one point".into()));
    }
    let orbits = rng.gen_range(1..=3);
    let mut result: Option<RightAction> = None;
    for _ in 0..orbits {
        let used = result.as_ref().map_or(0, |a| a.points());
        let candidates: Vec<Vec<usize>> = (0..group.order())
            .map(|a| group.generated(a))
            .chain(std::iter::once((0..group.order()).collect()))
            .filter(|h| used + group.order() / h.len() <= max_points)
            .collect();
        let Some(h) = candidates.choose(rng) else { break };
        let orbit = RightAction::cosets(group, h)?;
        result = Some(match result {
            None => orbit,
            Some(acc) => acc.disjoint_union(&orbit),
        });
    }
    result.ok_or_else(|| Error::Capacity(group.order()))
}

/// A `μ_N` 2-cocycle on `A ⋊ G`: the pullback of `k·[a + b ≥ m]` along the
/// group's character, plus the coboundary of a random arrow function.
pub fn global_cocycle<R: Rng>(
    rng: &mut R,
    kind: GroupKind,
    action: &RightAction,
    modulus: u32,
) -> Result<CyclicCocycle> {
    let group = kind.build()?;
    let base = action_groupoid(action, &group)?;
    let ng = group.order();
    let (chi, m) = kind.character();
    let k = rng.gen_range(0..modulus) as i64;
    let carry = CyclicCocycle::from_fn(&base, modulus, |x, y| k * ((chi[x % ng] + chi[y % ng]) >= m) as i64)?;
    let b: Vec<u32> = (0..base.n_arrows()).map(|_| rng.gen_range(0..modulus)).collect();
    coboundary_twist(&base, &carry, &b)
}

/// Random cover of `G`: one to three charts, each element in one or two.
pub fn cover<R: Rng>(rng: &mut R, order: usize) -> Vec<Vec<usize>> {
    let n_charts = rng.gen_range(1..=3usize);
    let mut charts = vec![Vec::new(); n_charts];
    for f in 0..order {
        let first = rng.gen_range(0..n_charts);
        charts[first].push(f);
        let second = rng.gen_range(0..n_charts);
        if second != first && rng.gen_bool(0.5) {
            charts[second].push(f);
        }
    }
    for c in &mut charts {
        c.sort_unstable();
    }
    charts.retain(|c| !c.is_empty());
    charts
}

/// A refined cover instance: group, action, global cocycle and the local
/// data obtained by splitting it over a random cover.
#[derive(Clone, Debug)]
pub struct RefinedCover {
    pub kind: GroupKind,
    pub global: CyclicCocycle,
    pub data: LocalExtensionData,
}

pub fn refined_cover<R: Rng>(rng: &mut R, max_order: usize, max_points: usize, modulus: u32) -> Result<RefinedCover> {
    let kind = group_kind(rng, max_order)?;
    let group = kind.build()?;
    let act = action(rng, &group, max_points)?;
    let global = global_cocycle(rng, kind, &act, modulus)?;
    let charts = cover(rng, group.order());
    let data = refine_global_cocycle(&group, &act, charts, &global, rng)?;
    Ok(RefinedCover { kind, global, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{axioms_check, cocycle_check, glue_local_data, PhaseCocycle};
    use crate::operator::{spectral_radius, unitarity_violation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrices_have_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = matrix_with_norm(&mut rng, 5, 0.1);
        assert!(spectral_radius(&a).unwrap() <= 0.1 + 1e-12);
        assert!(unitarity_violation(&unitary(&mut rng, 4).unwrap()) < 1e-12);
        let h = hermitian(&mut rng, 3);
        assert_eq!(h.max_abs_diff(&h.adjoint()), 0.0);
        let x = block_diagonal_anti_hermitian(&mut rng, 4, 1);
        assert_eq!(x.get(0, 2), C64::new(0.0, 0.0));
    }

    #[test]
    fn characters_are_homomorphisms() {
        for kind in group_kinds(8) {
            let g = kind.build().unwrap();
            assert_eq!(g.order(), kind.order());
            let (chi, m) = kind.character();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(chi[g.mul(a, b)], (chi[a] + chi[b]) % m, "{kind:?}");
                }
            }
        }
    }

    #[test]
    fn generated_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let inst = refined_cover(&mut rng, 8, 6, 4).unwrap();
            assert!(inst.data.action.points() <= 6);
            let group = inst.kind.build().unwrap();
            let base = action_groupoid(&inst.data.action, &group).unwrap();
            assert!(axioms_check(&base).is_empty());
            assert_eq!(cocycle_check(&base, &PhaseCocycle::Cyclic(inst.global.clone())).unwrap(), 0.0);
            glue_local_data(&inst.data, 4).unwrap();
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = refined_cover(&mut ChaCha8Rng::seed_from_u64(11), 8, 6, 3).unwrap();
        let b = refined_cover(&mut ChaCha8Rng::seed_from_u64(11), 8, 6, 3).unwrap();
        assert_eq!(a.data, b.data);
    }
}
