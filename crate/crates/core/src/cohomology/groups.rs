use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{CentralExtension, CyclicCocycle, FiniteGroupoid, PhaseCocycle};

use super::nerve::Nerve;
use super::smith::{gcd, smith_mod, ModMatrix, SmithForm};

/// A `Z_N`-valued function on level `p` of a nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub modulus: u32,
    pub values: Vec<u32>,
}

impl Cochain {
    pub fn zero(nerve: &Nerve, degree: usize, modulus: u32) -> Self {
        Cochain {
            degree,
            modulus,
            values: vec![0; nerve.count(degree)],
        }
    }

    /// The 2-cochain of a `μ_N` cocycle; level-2 cells are composable pairs.
    pub fn from_cocycle(nerve: &Nerve, c: &CyclicCocycle) -> Result<Self> {
        let values = (0..nerve.count(2))
            .map(|s| {
                let cell = nerve.cell(2, s);
                c.get(cell[0], cell[1])
            })
            .collect::<Result<_>>()?;
        Ok(Cochain {
            degree: 2,
            modulus: c.modulus(),
            values,
        })
    }
}

fn check_modulus(modulus: u32) -> Result<()> {
    if modulus == 0 {
        Err(Error::Domain("modulus must be positive".into()))
    } else {
        Ok(())
    }
}

/// `(δf)(σ) = Σ_i (−1)^i f(∂_i σ)` mod `N`.
pub fn coboundary(f: &Cochain, nerve: &Nerve) -> Result<Cochain> {
    check_modulus(f.modulus)?;
    let p = f.degree;
    if p + 1 > nerve.p_max() {
        return Err(Error::DegreeOverflow {
            degree: p + 1,
            p_max: nerve.p_max(),
        });
    }
    if f.values.len() != nerve.count(p) {
        return Err(Error::Domain(format!(
            "cochain has {} values, level {p} has {} cells",
            f.values.len(),
            nerve.count(p)
        )));
    }
    let n = f.modulus as i64;
    let values = (0..nerve.count(p + 1))
        .map(|s| {
            let sum: i64 = (0..=p + 1)
                .map(|i| {
                    let v = f.values[nerve.face(p + 1, i, s)] as i64;
                    if i % 2 == 0 { v } else { -v }
                })
                .sum();
            sum.rem_euclid(n) as u32
        })
        .collect();
    Ok(Cochain {
        degree: p + 1,
        modulus: f.modulus,
        values,
    })
}

/// Matrix of `δ: C^p → C^{p+1}` (rows indexed by level `p+1`).
pub fn coboundary_matrix(nerve: &Nerve, p: usize, modulus: u32) -> Result<ModMatrix> {
    check_modulus(modulus)?;
    if p + 1 > nerve.p_max() {
        return Err(Error::DegreeOverflow {
            degree: p + 1,
            p_max: nerve.p_max(),
        });
    }
    let mut m = ModMatrix::zeros(nerve.count(p + 1), nerve.count(p), modulus as u64);
    for s in 0..nerve.count(p + 1) {
        for i in 0..=p + 1 {
            m.add_signed(s, nerve.face(p + 1, i, s), if i % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(m)
}

/// `H^p(X_•; Z_N)` as a product of cyclic groups, with the data needed to
/// express cocycles in its Smith basis.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub modulus: u32,
    /// Orders of the cyclic factors, each dividing the next; empty when trivial.
    pub invariant_factors: Vec<u64>,
    /// Orders `k_t` of the kernel coordinates kept (all `> 1`).
    kernel_orders: Vec<u64>,
    /// Positions of the kept coordinates within `R⁻¹x`.
    kernel_positions: Vec<usize>,
    /// `N/k_t` for every coordinate of `R⁻¹x`, dropped ones included.
    cocycle_steps: Vec<u64>,
    /// `R⁻¹` from the Smith form of `δ_p`.
    right_inv: ModMatrix,
    /// Left transform of the relation matrix.
    relation_left: ModMatrix,
    /// For each invariant factor, its row in the relation Smith form.
    factor_rows: Vec<usize>,
}

impl CohomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Kernel coordinates `z_t = (R⁻¹x)_t / (N/k_t)` of a cocycle.
    fn kernel_coordinates(&self, x: &[u64]) -> Result<Vec<u64>> {
        let n = self.modulus as u64;
        let y = self.right_inv.mul_vec(x);
        if let Some(t) = (0..y.len()).find(|&t| y[t] % self.cocycle_steps[t] != 0) {
            return Err(Error::Domain(format!("cochain is not a cocycle (coordinate {t})")));
        }
        let mut z = Vec::with_capacity(self.kernel_positions.len());
        for (&t, &k) in self.kernel_positions.iter().zip(&self.kernel_orders) {
            z.push(y[t] / (n / k) % k);
        }
        Ok(z)
    }

    /// Coordinates of the class of a degree-`p` cocycle in the Smith basis,
    /// each reduced modulo its invariant factor.
    pub fn class_of(&self, cochain: &Cochain) -> Result<Vec<u64>> {
        if cochain.degree != self.degree || cochain.modulus != self.modulus {
            return Err(Error::Domain(format!(
                "degree-{} cochain mod {} given for H^{} mod {}",
                cochain.degree, cochain.modulus, self.degree, self.modulus
            )));
        }
        if cochain.values.len() != self.right_inv.cols {
            return Err(Error::Domain("cochain length does not match the nerve level".into()));
        }
        let x: Vec<u64> = cochain.values.iter().map(|&v| v as u64).collect();
        let z = self.kernel_coordinates(&x)?;
        let u = self.relation_left.mul_vec(&z);
        Ok(self
            .factor_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&r, &d)| u[r] % d)
            .collect())
    }
}

/// Computes `H^p` of the nerve with `Z_N` coefficients.
pub fn cohomology_of_nerve(nerve: &Nerve, degree: usize, modulus: u32) -> Result<CohomologyGroup> {
    check_modulus(modulus)?;
    let n = modulus as u64;
    let d_p = coboundary_matrix(nerve, degree, modulus)?;
    let cols = d_p.cols;
    let smith: SmithForm = smith_mod(d_p, false, true);
    let rank = smith.rank();
    let right_inv = smith.right_inv.expect("tracked");
    let mut kernel_positions = Vec::new();
    let mut kernel_orders = Vec::new();
    let mut cocycle_steps = Vec::with_capacity(cols);
    for t in 0..cols {
        let k = if t < rank { gcd(smith.diagonal[t], n) } else { n };
        cocycle_steps.push(n / k);
        if k > 1 {
            kernel_positions.push(t);
            kernel_orders.push(k);
        }
    }
    let m = kernel_positions.len();
    let image_cols = if degree == 0 {
        Vec::new()
    } else {
        let d_prev = coboundary_matrix(nerve, degree - 1, modulus)?;
        (0..d_prev.cols)
            .map(|j| (0..d_prev.rows).map(|i| d_prev.get(i, j)).collect::<Vec<u64>>())
            .collect()
    };
    let mut relations = ModMatrix::zeros(m, m + image_cols.len(), n);
    for (t, &k) in kernel_orders.iter().enumerate() {
        relations.set(t, t, k % n);
    }
    let partial = CohomologyGroup {
        degree,
        modulus,
        invariant_factors: Vec::new(),
        kernel_orders: kernel_orders.clone(),
        kernel_positions: kernel_positions.clone(),
        cocycle_steps: cocycle_steps.clone(),
        right_inv: right_inv.clone(),
        relation_left: ModMatrix::identity(m, n),
        factor_rows: Vec::new(),
    };
    for (j, col) in image_cols.iter().enumerate() {
        let z = partial.kernel_coordinates(col)?;
        for (t, v) in z.into_iter().enumerate() {
            relations.set(t, m + j, v);
        }
    }
    let rel = smith_mod(relations, true, false);
    let mut invariant_factors = Vec::new();
    let mut factor_rows = Vec::new();
    for t in 0..m {
        let d = match rel.diagonal.get(t) {
            Some(&d) if d != 0 => d,
            _ => n,
        };
        if d > 1 {
            invariant_factors.push(d);
            factor_rows.push(t);
        }
    }
    Ok(CohomologyGroup {
        degree,
        modulus,
        invariant_factors,
        kernel_orders,
        kernel_positions,
        cocycle_steps,
        right_inv,
        relation_left: rel.left.expect("tracked"),
        factor_rows,
    })
}

/// `H^p(Γ; Z_N)` for a finite groupoid.
pub fn cohomology_group(g: &FiniteGroupoid, degree: usize, modulus: u32) -> Result<CohomologyGroup> {
    let nerve = Nerve::new(g, degree + 1)?;
    cohomology_of_nerve(&nerve, degree, modulus)
}

/// A cohomology class together with the group it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub degree: usize,
    pub modulus: u32,
    pub invariant_factors: Vec<u64>,
    pub class: Vec<u64>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|&c| c == 0)
    }
}

/// Class in `H²(Γ; μ_N)` of a phase cocycle.
pub fn cocycle_class(g: &FiniteGroupoid, c: &PhaseCocycle) -> Result<CohomologyClass> {
    let c = match c {
        PhaseCocycle::Cyclic(c) => c,
        PhaseCocycle::Continuous(_) => {
            return Err(Error::UnsupportedCoefficients(
                "classes are computed for μ_N phases only".into(),
            ))
        }
    };
    let nerve = Nerve::new(g, 3)?;
    let group = cohomology_of_nerve(&nerve, 2, c.modulus())?;
    let class = group.class_of(&Cochain::from_cocycle(&nerve, c)?)?;
    Ok(CohomologyClass {
        degree: 2,
        modulus: c.modulus(),
        invariant_factors: group.invariant_factors,
        class,
    })
}

/// The class of the cocycle read off an extension's multiplication.
pub fn extension_class(e: &CentralExtension) -> Result<CohomologyClass> {
    cocycle_class(e.base(), &PhaseCocycle::Cyclic(e.multiplication_cocycle()?))
}

/// Whether two `μ_N` 2-cocycles differ by a coboundary, decided by solving
/// `δb = c₁ − c₂` through the Smith form of `δ₁` alone.
pub fn same_class(g: &FiniteGroupoid, c1: &CyclicCocycle, c2: &CyclicCocycle) -> Result<bool> {
    if c1.modulus() != c2.modulus() {
        return Err(Error::Domain("cocycles have different moduli".into()));
    }
    let modulus = c1.modulus();
    let n = modulus as u64;
    let nerve = Nerve::new(g, 2)?;
    let a = Cochain::from_cocycle(&nerve, c1)?;
    let b = Cochain::from_cocycle(&nerve, c2)?;
    let diff: Vec<u64> = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(&x, &y)| (x as u64 + n - y as u64) % n)
        .collect();
    let smith = smith_mod(coboundary_matrix(&nerve, 1, modulus)?, true, false);
    let v = smith.left.as_ref().expect("tracked").mul_vec(&diff);
    let rank = smith.rank();
    Ok(v.iter().enumerate().all(|(t, &vt)| {
        if t < rank {
            vt % smith.diagonal[t] == 0
        } else {
            vt == 0
        }
    }))
}
