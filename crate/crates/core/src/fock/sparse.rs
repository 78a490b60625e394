use crate::operator::{CMatrix, C64};

/// Column-compressed operator on the Fock basis. Second-quantized bilinears
/// have at most `m² + 1` entries per column, so products stay cheap even
/// where dense `2^m × 2^m` arithmetic would not.
#[derive(Clone, Debug)]
pub(crate) struct SparseOp {
    pub dim: usize,
    pub cols: Vec<Vec<(usize, C64)>>,
}

/// Scratch accumulator that merges duplicate row indices.
struct Accumulator {
    values: Vec<C64>,
    seen: Vec<bool>,
    touched: Vec<usize>,
}

impl Accumulator {
    fn new(dim: usize) -> Self {
        Accumulator {
            values: vec![C64::new(0.0, 0.0); dim],
            seen: vec![false; dim],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, row: usize, z: C64) {
        if !self.seen[row] {
            self.seen[row] = true;
            self.touched.push(row);
        }
        self.values[row] += z;
    }

    fn drain(&mut self) -> Vec<(usize, C64)> {
        self.touched.sort_unstable();
        let out = self
            .touched
            .iter()
            .map(|&r| (r, self.values[r]))
            .filter(|(_, z)| z.norm() != 0.0)
            .collect();
        for &r in &self.touched {
            self.values[r] = C64::new(0.0, 0.0);
            self.seen[r] = false;
        }
        self.touched.clear();
        out
    }
}

impl SparseOp {
    pub fn from_columns(dim: usize, cols: Vec<Vec<(usize, C64)>>) -> Self {
        let mut acc = Accumulator::new(dim);
        let cols = cols
            .into_iter()
            .map(|col| {
                for (r, z) in col {
                    acc.add(r, z);
                }
                acc.drain()
            })
            .collect();
        SparseOp { dim, cols }
    }

    pub fn mul(&self, rhs: &SparseOp) -> SparseOp {
        let mut acc = Accumulator::new(self.dim);
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                for &(k, zk) in col {
                    for &(r, z) in &self.cols[k] {
                        acc.add(r, z * zk);
                    }
                }
                acc.drain()
            })
            .collect();
        SparseOp { dim: self.dim, cols }
    }

    pub fn linear(&self, a: C64, rhs: &SparseOp, b: C64) -> SparseOp {
        let mut acc = Accumulator::new(self.dim);
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(x, y)| {
                for &(r, z) in x {
                    acc.add(r, a * z);
                }
                for &(r, z) in y {
                    acc.add(r, b * z);
                }
                acc.drain()
            })
            .collect();
        SparseOp { dim: self.dim, cols }
    }

    pub fn trace(&self) -> C64 {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().filter(move |(r, _)| *r == j).map(|(_, z)| *z))
            .sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, z)| *z)
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// `max |self − c·1|` over all entries.
    pub fn distance_to_scalar(&self, c: C64) -> f64 {
        self.cols
            .iter()
            .enumerate()
            .map(|(j, col)| {
                let mut diag_seen = false;
                let mut worst = col.iter().fold(0.0f64, |w, &(r, z)| {
                    if r == j {
                        diag_seen = true;
                        w.max((z - c).norm())
                    } else {
                        w.max(z.norm())
                    }
                });
                if !diag_seen {
                    worst = worst.max(c.norm());
                }
                worst
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, z) in col {
                m.set(r, j, z);
            }
        }
        m
    }
}
