use crate::error::{Error, Result};
use crate::operator::C64;

use super::cocycle::{chord, cocycle_check, ContinuousCocycle, CyclicCocycle, PhaseCocycle, CONTINUOUS_TOL};
use super::groupoid::{axioms_check, FiniteGroupoid};

/// A `μ_N`-central extension `R₁ ⇉ X₀` of a finite groupoid.
///
/// Total arrow `(x, k)` sits at index `x·N + k`; `k` is the phase exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    base: FiniteGroupoid,
    modulus: u32,
    total: FiniteGroupoid,
    projection: Vec<usize>,
    phase_action: Vec<Vec<usize>>,
}

impl CentralExtension {
    /// Wraps an arbitrary total groupoid laid out as `x·N + k`. Only the
    /// layout is validated, so defective multiplications can be inspected.
    pub fn from_parts(base: FiniteGroupoid, modulus: u32, total: FiniteGroupoid) -> Result<Self> {
        let n = modulus as usize;
        if n == 0 || total.n_arrows() != base.n_arrows() * n || total.n_objects() != base.n_objects() {
            return Err(Error::Domain(format!(
                "total groupoid has {} arrows over {} objects; expected {} × {modulus} over {}",
                total.n_arrows(),
                total.n_objects(),
                base.n_arrows(),
                base.n_objects()
            )));
        }
        for a in 0..total.n_arrows() {
            let x = a / n;
            if total.source(a) != base.source(x) || total.target(a) != base.target(x) {
                return Err(Error::Domain(format!("total arrow {a} does not lie over {x}")));
            }
        }
        let projection = (0..total.n_arrows()).map(|a| a / n).collect();
        let phase_action = (0..n)
            .map(|k| (0..total.n_arrows()).map(|a| (a / n) * n + (a % n + k) % n).collect())
            .collect();
        Ok(CentralExtension {
            base,
            modulus,
            total,
            projection,
            phase_action,
        })
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn total(&self) -> &FiniteGroupoid {
        &self.total
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Index of `(x, k)` in the total groupoid.
    pub fn arrow(&self, x: usize, k: u32) -> usize {
        x * self.modulus as usize + (k % self.modulus) as usize
    }

    pub fn projection(&self, a: usize) -> usize {
        self.projection[a]
    }

    pub fn phase(&self, a: usize) -> u32 {
        (a % self.modulus as usize) as u32
    }

    /// `e^{2πik/N} · a`.
    pub fn act(&self, k: u32, a: usize) -> usize {
        self.phase_action[(k % self.modulus) as usize][a]
    }

    /// The cocycle read off the multiplication: `(x,0)(y,0) = (xy, c(x,y))`.
    pub fn multiplication_cocycle(&self) -> Result<CyclicCocycle> {
        let values = self
            .base
            .composable_pairs()
            .map(|(x, y)| {
                let z = self.total.compose_checked(self.arrow(x, 0), self.arrow(y, 0))?;
                Ok(((x, y), self.phase(z)))
            })
            .collect::<Result<_>>()?;
        CyclicCocycle::new(self.modulus, values)
    }
}

/// `(x,k₁)·(y,k₂) = (xy, k₁ + k₂ + c(x,y))` on `X₁ × μ_N`.
pub fn central_extend(g: &FiniteGroupoid, c: &CyclicCocycle) -> Result<CentralExtension> {
    let violation = cocycle_check(g, &PhaseCocycle::Cyclic(c.clone()))?;
    if violation != 0.0 {
        return Err(Error::ExtensionIllDefined(violation));
    }
    let n = c.modulus() as usize;
    let arrows = g.n_arrows() * n;
    if arrows > super::groupoid::MAX_ARROWS {
        return Err(Error::Capacity(arrows));
    }
    let mut compositions = Vec::new();
    for (x, y) in g.composable_pairs() {
        let xy = g.compose_checked(x, y)?;
        let cxy = c.get(x, y)? as usize;
        for k1 in 0..n {
            for k2 in 0..n {
                compositions.push((x * n + k1, y * n + k2, xy * n + (k1 + k2 + cxy) % n));
            }
        }
    }
    let lift = |f: &dyn Fn(usize) -> usize| (0..arrows).map(|a| f(a / n)).collect::<Vec<_>>();
    let total = FiniteGroupoid::from_composition(
        g.objects().to_vec(),
        lift(&|x| g.source(x)),
        lift(&|x| g.target(x)),
        &compositions,
    )
    .map_err(|e| Error::Consistency(format!("extension multiplication is not a groupoid: {e}")))?;
    CentralExtension::from_parts(g.clone(), c.modulus(), total)
}

/// Largest chord distance between `(s·x)(t·y)` and `st·(xy)` over all phase
/// pairs and composable pairs; a composite over the wrong base arrow counts as 2.
pub fn centrality_check(e: &CentralExtension) -> f64 {
    let n = e.modulus();
    let mut worst = 0.0f64;
    for (x, y) in e.base().composable_pairs() {
        let (x0, y0) = (e.arrow(x, 0), e.arrow(y, 0));
        let Some(xy) = e.total().compose(x0, y0) else {
            return 2.0;
        };
        for s in 0..n {
            for t in 0..n {
                let lhs = e.total().compose(e.act(s, x0), e.act(t, y0));
                let rhs = e.act(s + t, xy);
                worst = worst.max(match lhs {
                    Some(l) if e.projection(l) == e.projection(rhs) => {
                        chord((e.phase(l) + n - e.phase(rhs)) % n, n)
                    }
                    _ => 2.0,
                });
            }
        }
    }
    worst
}

/// An `S¹`-central extension, kept symbolically: arrows are pairs `(x, λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousExtension {
    base: FiniteGroupoid,
    cocycle: ContinuousCocycle,
}

impl ContinuousExtension {
    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn cocycle(&self) -> &ContinuousCocycle {
        &self.cocycle
    }

    /// `(x,λ₁)·(y,λ₂) = (xy, λ₁λ₂c(x,y))`.
    pub fn multiply(&self, a: (usize, C64), b: (usize, C64)) -> Result<(usize, C64)> {
        let xy = self.base.compose_checked(a.0, b.0)?;
        Ok((xy, a.1 * b.1 * self.cocycle.get(a.0, b.0)?))
    }

    /// Centrality `(s·x)(t·y) = st·(xy)` sampled over the given phases.
    pub fn centrality_check(&self, phases: &[C64]) -> Result<f64> {
        let one = C64::new(1.0, 0.0);
        let mut worst = 0.0f64;
        for (x, y) in self.base.composable_pairs() {
            let (xy, base) = self.multiply((x, one), (y, one))?;
            for &s in phases {
                for &t in phases {
                    let (z, lam) = self.multiply((x, s), (y, t))?;
                    let v = if z == xy { (lam - s * t * base).norm() } else { 2.0 };
                    worst = worst.max(v);
                }
            }
        }
        Ok(worst)
    }

    /// Associativity of the twisted multiplication over all composable
    /// triples at unit phases.
    pub fn associativity_check(&self) -> Result<f64> {
        let one = C64::new(1.0, 0.0);
        let mut worst = 0.0f64;
        for (x, y) in self.base.composable_pairs() {
            for &z in self.base.arrows_into(self.base.source(y)) {
                let left = self.multiply(self.multiply((x, one), (y, one))?, (z, one))?;
                let right = self.multiply((x, one), self.multiply((y, one), (z, one))?)?;
                worst = worst.max((left.1 - right.1).norm());
            }
        }
        Ok(worst)
    }
}

pub fn central_extend_continuous(g: &FiniteGroupoid, c: &ContinuousCocycle) -> Result<ContinuousExtension> {
    let violation = cocycle_check(g, &PhaseCocycle::Continuous(c.clone()))?;
    if violation > CONTINUOUS_TOL {
        return Err(Error::ExtensionIllDefined(violation));
    }
    Ok(ContinuousExtension {
        base: g.clone(),
        cocycle: c.clone(),
    })
}

/// Checks that the extension's projection is a groupoid morphism and that
/// the total groupoid satisfies every axiom; returns the number of failures.
pub fn extension_diagnostics(e: &CentralExtension) -> usize {
    let t = e.total();
    let morphism_failures = t
        .composable_pairs()
        .filter(|&(a, b)| match t.compose(a, b) {
            Some(ab) => e.base().compose(e.projection(a), e.projection(b)) != Some(e.projection(ab)),
            None => true,
        })
        .count();
    morphism_failures + axioms_check(t).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{action_groupoid, FiniteGroup, RightAction};

    fn bz(n: usize) -> FiniteGroupoid {
        let g = FiniteGroup::cyclic(n).unwrap();
        action_groupoid(&RightAction::trivial(&g, 1), &g).unwrap()
    }

    #[test]
    fn z4_from_z2() {
        let g = bz(2);
        let c = CyclicCocycle::from_fn(&g, 2, |x, y| (x == 1 && y == 1) as i64).unwrap();
        let e = central_extend(&g, &c).unwrap();
        assert_eq!(e.total().n_arrows(), 4);
        assert_eq!(extension_diagnostics(&e), 0);
        assert_eq!(centrality_check(&e), 0.0);
        // (g, 1) has order 4.
        let a = e.arrow(1, 0);
        let mut x = a;
        let mut order = 1;
        while x != e.total().identity(0) {
            x = e.total().compose(x, a).unwrap();
            order += 1;
        }
        assert_eq!(order, 4);
        assert_eq!(e.multiplication_cocycle().unwrap(), c);
    }

    #[test]
    fn trivial_cocycle_gives_product() {
        let g = bz(3);
        let e = central_extend(&g, &CyclicCocycle::trivial(&g, 2).unwrap()).unwrap();
        for (x, y) in g.composable_pairs() {
            for k1 in 0..2 {
                for k2 in 0..2 {
                    let z = e.total().compose(e.arrow(x, k1), e.arrow(y, k2)).unwrap();
                    assert_eq!(z, e.arrow(g.compose(x, y).unwrap(), k1 + k2));
                }
            }
        }
        assert_eq!(centrality_check(&e), 0.0);
    }

    #[test]
    fn non_cocycle_rejected() {
        let g = bz(3);
        let c = CyclicCocycle::from_fn(&g, 3, |x, y| (x == 1 && y == 2) as i64).unwrap();
        assert!(matches!(central_extend(&g, &c), Err(Error::ExtensionIllDefined(_))));
    }

    #[test]
    fn one_sided_phase_is_not_central() {
        let g = bz(2);
        let n = 3usize;
        let mut comps = Vec::new();
        for (x, y) in g.composable_pairs() {
            let xy = g.compose(x, y).unwrap();
            for k1 in 0..n {
                for k2 in 0..n {
                    comps.push((x * n + k1, y * n + k2, xy * n + k1));
                }
            }
        }
        let total = FiniteGroupoid::from_tables(
            g.objects().to_vec(),
            vec![0; 6],
            vec![0; 6],
            vec![0],
            (0..6).collect(),
            &comps,
        )
        .unwrap();
        let e = CentralExtension::from_parts(g, 3, total).unwrap();
        assert!(centrality_check(&e) > 1.0);
    }

    #[test]
    fn continuous_extension() {
        let g = bz(4);
        let c = ContinuousCocycle::from_fn(&g, |x, y| {
            C64::from_polar(1.0, std::f64::consts::PI * ((x + y) >= 4) as u8 as f64 / 2.0)
        })
        .unwrap();
        let e = central_extend_continuous(&g, &c).unwrap();
        let phases: Vec<C64> = (0..5).map(|k| C64::from_polar(1.0, 0.7 * k as f64)).collect();
        assert!(e.centrality_check(&phases).unwrap() < 1e-14);
        assert!(e.associativity_check().unwrap() < 1e-14);
    }
}
