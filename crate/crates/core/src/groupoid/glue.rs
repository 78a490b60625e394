//! Assembling a global central extension of `A ⋊ G` from chart-local group
//! cocycles and transition functions.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};

use super::cocycle::{CyclicCocycle, PhaseCocycle, cocycle_check};
use super::extension::{central_extend, CentralExtension};
use super::group::{FiniteGroup, RightAction};
use super::groupoid::{action_groupoid, axioms_check};

/// Key `(α, α', f, A)` of a transition value `φ_{αα'}(A; f)`.
pub type TransitionKey = (usize, usize, usize, usize);
/// Key `(α, β, γ, f, g, A)` of a local cocycle value `ω_{αβ,γ}(A; f, g)`.
pub type OmegaKey = (usize, usize, usize, usize, usize, usize);

/// Local data over a cover `{U_α}` of a finite group acting on a finite set.
/// All phases are exponents in `Z_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExtensionData {
    pub group: FiniteGroup,
    pub action: RightAction,
    /// Chart `α` as a sorted list of group elements.
    pub charts: Vec<Vec<usize>>,
    /// `φ_{αα'}(A; f)` for `f ∈ U_α ∩ U_α'`.
    pub transitions: BTreeMap<TransitionKey, u32>,
    /// `ω_{αβ,γ}(A; f, g)` for `f ∈ U_α`, `g ∈ U_β`, `fg ∈ U_γ`.
    pub omega: BTreeMap<OmegaKey, u32>,
}

impl LocalExtensionData {
    fn charts_of(&self) -> Result<Vec<Vec<usize>>> {
        let order = self.group.order();
        let mut containing = vec![Vec::new(); order];
        for (alpha, chart) in self.charts.iter().enumerate() {
            for &f in chart {
                if f >= order {
                    return Err(Error::Domain(format!("chart {alpha} lists element {f} outside G")));
                }
                if !containing[f].contains(&alpha) {
                    containing[f].push(alpha);
                }
            }
        }
        if let Some(f) = containing.iter().position(|c| c.is_empty()) {
            return Err(Error::Domain(format!("cover misses group element {f}")));
        }
        Ok(containing)
    }

    fn phi(&self, key: TransitionKey) -> Result<u64> {
        self.transitions
            .get(&key)
            .map(|&v| v as u64)
            .ok_or_else(|| Error::Domain(format!("missing transition value at {key:?}")))
    }

    fn om(&self, key: OmegaKey) -> Result<u64> {
        self.omega
            .get(&key)
            .map(|&v| v as u64)
            .ok_or_else(|| Error::Domain(format!("missing local cocycle value at {key:?}")))
    }

    /// Least chart index containing each group element.
    pub fn chart_choice(&self) -> Result<Vec<usize>> {
        Ok(self.charts_of()?.into_iter().map(|c| c[0]).collect())
    }

    /// Checks the descent condition
    /// `ω_{αβ,γ}(A;f,g) = φ_{αα'}(A;f) + φ_{ββ'}(A^f;g) − φ_{γγ'}(A;fg) + ω_{α'β',γ'}(A;f,g)`
    /// for every admissible choice of charts.
    pub fn check_descent(&self, modulus: u32) -> Result<()> {
        let n = modulus as u64;
        let containing = self.charts_of()?;
        let g = &self.group;
        for a in 0..self.action.points() {
            for f in 0..g.order() {
                let af = self.action.act(a, f);
                for h in 0..g.order() {
                    let fh = g.mul(f, h);
                    for &al in &containing[f] {
                        for &al2 in &containing[f] {
                            let phi_a = self.phi((al, al2, f, a))? % n;
                            for &be in &containing[h] {
                                for &be2 in &containing[h] {
                                    let phi_b = self.phi((be, be2, h, af))? % n;
                                    for &ga in &containing[fh] {
                                        for &ga2 in &containing[fh] {
                                            let lhs = self.om((al, be, ga, f, h, a))? % n;
                                            let rhs = (phi_a + phi_b + n
                                                - self.phi((ga, ga2, fh, a))? % n
                                                + self.om((al2, be2, ga2, f, h, a))? % n)
                                                % n;
                                            if lhs != rhs {
                                                return Err(Error::Descent {
                                                    alpha: al,
                                                    alpha2: al2,
                                                    beta: be,
                                                    beta2: be2,
                                                    gamma: ga,
                                                    gamma2: ga2,
                                                    f,
                                                    g: h,
                                                    object: a,
                                                });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `ω(A; f, g)` read in the least charts of `f`, `g` and `fg`.
    pub fn charted_omega(&self, modulus: u32) -> Result<Vec<Vec<Vec<u32>>>> {
        let choice = self.chart_choice()?;
        let g = &self.group;
        (0..self.action.points())
            .map(|a| {
                (0..g.order())
                    .map(|f| {
                        (0..g.order())
                            .map(|h| {
                                let key = (choice[f], choice[h], choice[g.mul(f, h)], f, h, a);
                                Ok((self.om(key)? % modulus as u64) as u32)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Validates descent and the local cocycle condition, assembles the global
/// cocycle `c((A,f),(A^f,g)) = ω(A; f, g)` in least charts, and returns the
/// central extension it defines, re-verified exhaustively.
pub fn glue_local_data(data: &LocalExtensionData, modulus: u32) -> Result<CentralExtension> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let base = action_groupoid(&data.action, &data.group)?;
    data.check_descent(modulus)?;
    let omega = data.charted_omega(modulus)?;
    let ng = data.group.order();
    let c = CyclicCocycle::from_fn(&base, modulus, |x, y| {
        let (a, f) = (x / ng, x % ng);
        omega[a][f][y % ng] as i64
    })?;
    let violation = cocycle_check(&base, &PhaseCocycle::Cyclic(c.clone()))?;
    if violation != 0.0 {
        return Err(Error::Cocycle(format!(
            "charted local cocycles violate the group-cocycle identity (chord {violation:.3e})"
        )));
    }
    let ext = central_extend(&base, &c)?;
    let failures = axioms_check(ext.total());
    if let Some(first) = failures.first() {
        return Err(Error::Consistency(format!("glued extension fails {first}")));
    }
    Ok(ext)
}

/// Splits a global cocycle on `A ⋊ G` into local data over the given cover,
/// using random chart corrections `h_α(A; f)`:
/// `φ_{αα'} = h_α − h_α'` and `ω_{αβ,γ}(A;f,g) = c + h_α(A;f) + h_β(A^f;g) − h_γ(A;fg)`.
pub fn refine_global_cocycle<R: Rng>(
    group: &FiniteGroup,
    action: &RightAction,
    charts: Vec<Vec<usize>>,
    global: &CyclicCocycle,
    rng: &mut R,
) -> Result<LocalExtensionData> {
    let n = global.modulus() as u64;
    let ng = group.order();
    let mut data = LocalExtensionData {
        group: group.clone(),
        action: action.clone(),
        charts,
        transitions: BTreeMap::new(),
        omega: BTreeMap::new(),
    };
    let containing = data.charts_of()?;
    let corrections: BTreeMap<(usize, usize, usize), u64> = containing
        .iter()
        .enumerate()
        .flat_map(|(f, cs)| cs.iter().map(move |&al| (al, f)))
        .flat_map(|(al, f)| (0..action.points()).map(move |a| (al, f, a)))
        .map(|key| (key, rng.gen_range(0..n)))
        .collect();
    for a in 0..action.points() {
        for f in 0..ng {
            for &al in &containing[f] {
                for &al2 in &containing[f] {
                    let v = (corrections[&(al, f, a)] + n - corrections[&(al2, f, a)]) % n;
                    data.transitions.insert((al, al2, f, a), v as u32);
                }
            }
            let af = action.act(a, f);
            for h in 0..ng {
                let fh = group.mul(f, h);
                let c = global.get(a * ng + f, af * ng + h)? as u64;
                for &al in &containing[f] {
                    for &be in &containing[h] {
                        for &ga in &containing[fh] {
                            let v = (c + corrections[&(al, f, a)] + corrections[&(be, h, af)] + n
                                - corrections[&(ga, fh, a)])
                                % n;
                            data.omega.insert((al, be, ga, f, h, a), v as u32);
                        }
                    }
                }
            }
        }
    }
    Ok(data)
}
