use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::operator::C64;

use super::groupoid::FiniteGroupoid;

/// Tolerance for unit-modulus continuous phases.
pub const CONTINUOUS_TOL: f64 = 1e-10;

/// `|e^{2πik/N} − 1|`; exactly zero when `k ≡ 0`.
pub fn chord(k: u32, modulus: u32) -> f64 {
    if k % modulus == 0 {
        0.0
    } else {
        2.0 * (PI * (k % modulus) as f64 / modulus as f64).sin().abs()
    }
}

/// A `μ_N`-valued 2-cochain on composable pairs, stored as exponents `k`
/// meaning `e^{2πik/N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCocycle {
    modulus: u32,
    values: BTreeMap<(usize, usize), u32>,
}

fn check_modulus(modulus: u32) -> Result<()> {
    if modulus == 0 {
        Err(Error::Domain("modulus must be positive".into()))
    } else {
        Ok(())
    }
}

impl CyclicCocycle {
    /// Values are reduced modulo `N`.
    pub fn new(modulus: u32, values: BTreeMap<(usize, usize), u32>) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(CyclicCocycle {
            modulus,
            values: values.into_iter().map(|(k, v)| (k, v % modulus)).collect(),
        })
    }

    /// Tabulates `f` (reduced mod `N`) on every composable pair.
    pub fn from_fn(g: &FiniteGroupoid, modulus: u32, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self> {
        check_modulus(modulus)?;
        let values = g
            .composable_pairs()
            .map(|(x, y)| ((x, y), f(x, y).rem_euclid(modulus as i64) as u32))
            .collect();
        Ok(CyclicCocycle { modulus, values })
    }

    pub fn trivial(g: &FiniteGroupoid, modulus: u32) -> Result<Self> {
        Self::from_fn(g, modulus, |_, _| 0)
    }

    /// `(δb)(x,y) = b(x) + b(y) − b(xy)` for an arrow function `b`.
    pub fn coboundary(g: &FiniteGroupoid, modulus: u32, b: &[u32]) -> Result<Self> {
        CyclicCocycle::trivial(g, modulus).and_then(|t| coboundary_twist(g, &t, b))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> Result<u32> {
        self.values
            .get(&(x, y))
            .copied()
            .ok_or_else(|| Error::Domain(format!("cocycle has no value on ({x},{y})")))
    }

    /// Exponent of `c(x,y) c(xy,z) c(x,yz)⁻¹ c(y,z)⁻¹`.
    pub fn defect(&self, g: &FiniteGroupoid, x: usize, y: usize, z: usize) -> Result<u32> {
        let n = self.modulus as u64;
        let xy = g.compose_checked(x, y)?;
        let yz = g.compose_checked(y, z)?;
        let plus = self.get(x, y)? as u64 + self.get(xy, z)? as u64;
        let minus = self.get(x, yz)? as u64 + self.get(y, z)? as u64;
        Ok(((plus + 2 * n - minus) % n) as u32)
    }
}

/// A unit-complex 2-cochain on composable pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousCocycle {
    values: BTreeMap<(usize, usize), C64>,
}

impl ContinuousCocycle {
    pub fn new(values: BTreeMap<(usize, usize), C64>) -> Result<Self> {
        if let Some((k, z)) = values
            .iter()
            .find(|(_, z)| (z.norm() - 1.0).abs() > CONTINUOUS_TOL)
        {
            return Err(Error::Domain(format!(
                "phase on {k:?} has modulus {}, not 1",
                z.norm()
            )));
        }
        Ok(ContinuousCocycle { values })
    }

    pub fn from_fn(g: &FiniteGroupoid, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::new(g.composable_pairs().map(|(x, y)| ((x, y), f(x, y))).collect())
    }

    /// The unit-complex image of a `μ_N` cochain.
    pub fn from_cyclic(c: &CyclicCocycle) -> Self {
        let n = c.modulus() as f64;
        ContinuousCocycle {
            values: c
                .values()
                .iter()
                .map(|(&k, &v)| (k, C64::from_polar(1.0, 2.0 * PI * v as f64 / n)))
                .collect(),
        }
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), C64> {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> Result<C64> {
        self.values
            .get(&(x, y))
            .copied()
            .ok_or_else(|| Error::Domain(format!("cocycle has no value on ({x},{y})")))
    }

    /// Multiplies by `δb`, `b` a unit-complex arrow function.
    pub fn twist(&self, g: &FiniteGroupoid, b: &[C64]) -> Result<Self> {
        check_arrow_function(g, b.len())?;
        let values = self
            .values
            .iter()
            .map(|(&(x, y), &c)| Ok(((x, y), c * b[x] * b[y] / b[g.compose_checked(x, y)?])))
            .collect::<Result<_>>()?;
        Self::new(values)
    }
}

/// A 2-cochain with phases in `μ_N` (exact) or in `S¹` (floating point).
#[derive(Clone, Debug, PartialEq)]
pub enum PhaseCocycle {
    Cyclic(CyclicCocycle),
    Continuous(ContinuousCocycle),
}

impl From<CyclicCocycle> for PhaseCocycle {
    fn from(c: CyclicCocycle) -> Self {
        PhaseCocycle::Cyclic(c)
    }
}

impl From<ContinuousCocycle> for PhaseCocycle {
    fn from(c: ContinuousCocycle) -> Self {
        PhaseCocycle::Continuous(c)
    }
}

/// Largest `|c(x,y)c(xy,z)c(x,yz)⁻¹c(y,z)⁻¹ − 1|` over all composable triples.
/// For `μ_N` phases the result is exactly zero on a cocycle.
pub fn cocycle_check(g: &FiniteGroupoid, c: &PhaseCocycle) -> Result<f64> {
    let mut worst = 0.0f64;
    for (x, y) in g.composable_pairs() {
        for &z in g.arrows_into(g.source(y)) {
            let v = match c {
                PhaseCocycle::Cyclic(c) => chord(c.defect(g, x, y, z)?, c.modulus()),
                PhaseCocycle::Continuous(c) => {
                    let xy = g.compose_checked(x, y)?;
                    let yz = g.compose_checked(y, z)?;
                    let ratio = c.get(x, y)? * c.get(xy, z)? / (c.get(x, yz)? * c.get(y, z)?);
                    (ratio - C64::new(1.0, 0.0)).norm()
                }
            };
            worst = worst.max(v);
        }
    }
    Ok(worst)
}

fn check_arrow_function(g: &FiniteGroupoid, len: usize) -> Result<()> {
    if len != g.n_arrows() {
        return Err(Error::Domain(format!(
            "1-cochain has {len} values, groupoid has {} arrows",
            g.n_arrows()
        )));
    }
    Ok(())
}

/// `c + δb` in exponent form: `(δb)(x,y) = b(x) + b(y) − b(xy)`.
pub fn coboundary_twist(g: &FiniteGroupoid, c: &CyclicCocycle, b: &[u32]) -> Result<CyclicCocycle> {
    check_arrow_function(g, b.len())?;
    let n = c.modulus() as u64;
    let values = c
        .values()
        .iter()
        .map(|(&(x, y), &v)| {
            let xy = g.compose_checked(x, y)?;
            let k = (v as u64 + b[x] as u64 % n + b[y] as u64 % n + n - b[xy] as u64 % n) % n;
            Ok(((x, y), k as u32))
        })
        .collect::<Result<_>>()?;
    Ok(CyclicCocycle {
        modulus: c.modulus(),
        values,
    })
}
