//! Smith normal form over `Z_N`, kept entirely in residues so entries never grow.

/// Dense row-major matrix of residues modulo `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// Adds a signed integer to an entry.
    pub fn add_signed(&mut self, i: usize, j: usize, v: i64) {
        let n = self.modulus as i64;
        let cur = self.get(i, j) as i64;
        self.data[i * self.cols + j] = (cur + v).rem_euclid(n) as u64;
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a * b % n) % n)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, r: usize, u: u64) {
        let n = self.modulus;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = *v * u % n;
        }
    }

    /// `(row_a, row_b) ← (p·row_a + q·row_b, r·row_a + s·row_b)`.
    fn combine_rows(&mut self, a: usize, b: usize, [p, q, r, s]: [u64; 4]) {
        let n = self.modulus;
        for j in 0..self.cols {
            let (x, y) = (self.data[a * self.cols + j], self.data[b * self.cols + j]);
            self.data[a * self.cols + j] = (p * x % n + q * y % n) % n;
            self.data[b * self.cols + j] = (r * x % n + s * y % n) % n;
        }
    }

    /// `(col_a, col_b) ← (p·col_a + q·col_b, r·col_a + s·col_b)`.
    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [u64; 4]) {
        let n = self.modulus;
        for i in 0..self.rows {
            let (x, y) = (self.data[i * self.cols + a], self.data[i * self.cols + b]);
            self.data[i * self.cols + a] = (p * x % n + q * y % n) % n;
            self.data[i * self.cols + b] = (r * x % n + s * y % n) % n;
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(d, x, y)` with `x·a + y·b = d = gcd(a, b)` over the integers.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (d, x, y) = egcd(b, a % b);
        (d, y, x - (a / b) * y)
    }
}

/// A unit `u` of `Z_N` with `u·p ≡ gcd(p, N)`.
fn normalizing_unit(p: u64, n: u64) -> u64 {
    let g = gcd(p, n);
    let m = n / g;
    let (_, x, _) = egcd((p / g) as i64, m as i64);
    let u0 = x.rem_euclid(m as i64) as u64;
    (0..n)
        .map(|k| u0 + k * m)
        .find(|&u| gcd(u, n) == 1)
        .unwrap_or(1)
}

/// `L·M·R = diag(d₁, d₂, …)` with every `d_t` a divisor of `N` (or zero) and
/// `d_t | d_{t+1}`. `left` is `L`; `right_inv` is `R⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<u64>,
    pub left: Option<ModMatrix>,
    pub right_inv: Option<ModMatrix>,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|&&d| d != 0).count()
    }
}

fn m_neg(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Diagonalizes `m` by unimodular row and column operations over `Z_N`.
/// Pivots are the smallest nonzero residue, ties broken in row-major order.
pub fn smith_mod(mut m: ModMatrix, track_left: bool, track_right_inv: bool) -> SmithForm {
    let n = m.modulus;
    let mut left = track_left.then(|| ModMatrix::identity(m.rows, n));
    let mut rinv = track_right_inv.then(|| ModMatrix::identity(m.cols, n));
    let steps = m.rows.min(m.cols);
    let mut diagonal = Vec::with_capacity(steps);
    for t in 0..steps {
        // Smallest nonzero residue in the trailing block.
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let v = m.get(i, j);
                if v != 0 && best.map_or(true, |(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            diagonal.extend(std::iter::repeat(0).take(steps - t));
            break;
        };
        m.swap_rows(t, pi);
        if let Some(l) = left.as_mut() {
            l.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        if let Some(r) = rinv.as_mut() {
            r.swap_rows(t, pj);
        }
        loop {
            let u = normalizing_unit(m.get(t, t), n);
            if u != 1 {
                m.scale_row(t, u);
                if let Some(l) = left.as_mut() {
                    l.scale_row(t, u);
                }
            }
            let mut disturbed = false;
            for i in t + 1..m.rows {
                let a = m.get(i, t);
                if a == 0 {
                    continue;
                }
                let g = m.get(t, t);
                let op = if a % g == 0 {
                    [1, 0, m_neg(-((a / g) as i64), n), 1]
                } else {
                    let (d, x, y) = egcd(g as i64, a as i64);
                    disturbed = true;
                    [m_neg(x, n), m_neg(y, n), m_neg(-(a as i64 / d), n), (g as i64 / d) as u64 % n]
                };
                m.combine_rows(t, i, op);
                if let Some(l) = left.as_mut() {
                    l.combine_rows(t, i, op);
                }
                if disturbed {
                    break;
                }
            }
            if disturbed {
                continue;
            }
            for j in t + 1..m.cols {
                let a = m.get(t, j);
                if a == 0 {
                    continue;
                }
                let g = m.get(t, t);
                // Column ops E with inverse applied to R⁻¹ as row ops.
                let (op, inv) = if a % g == 0 {
                    let q = a / g;
                    ([1, 0, m_neg(-(q as i64), n), 1], [1, q % n, 0, 1])
                } else {
                    let (d, x, y) = egcd(g as i64, a as i64);
                    disturbed = true;
                    let (p, q, r, s) = (x, y, -(a as i64 / d), g as i64 / d);
                    // col_t ← p col_t + q col_j, col_j ← r col_t + s col_j (det 1)
                    ([m_neg(p, n), m_neg(q, n), m_neg(r, n), m_neg(s, n)], [m_neg(s, n), m_neg(-r, n), m_neg(-q, n), m_neg(p, n)])
                };
                m.combine_cols(t, j, op);
                if let Some(r) = rinv.as_mut() {
                    r.combine_rows(t, j, inv);
                }
                if disturbed {
                    break;
                }
            }
            if disturbed {
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            let d = m.get(t, t);
            let offender = (t + 1..m.rows).find(|&i| (t + 1..m.cols).any(|j| m.get(i, j) % d != 0));
            match offender {
                Some(i) => {
                    m.combine_rows(t, i, [1, 1, 0, 1]);
                    if let Some(l) = left.as_mut() {
                        l.combine_rows(t, i, [1, 1, 0, 1]);
                    }
                }
                None => break,
            }
        }
        diagonal.push(m.get(t, t));
    }
    SmithForm {
        diagonal,
        left,
        right_inv: rinv,
    }
}
