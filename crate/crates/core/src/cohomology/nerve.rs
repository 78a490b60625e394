use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// Highest nerve level that can be built.
pub const MAX_LEVEL: usize = 3;
/// Largest total number of cells across all levels.
pub const MAX_CELLS: usize = 1_000_000;

/// The nerve of a finite groupoid up to level `p_max`.
///
/// Level 0 holds the objects; level `p ≥ 1` holds composable chains
/// `(x₁,…,x_p)` with `s(x_i) = t(x_{i+1})`, in lexicographic arrow order.
/// Faces: on level 1, `∂₀x = s(x)` and `∂₁x = t(x)`; above, `∂₀` drops `x₁`,
/// `∂_p` drops `x_p` and `∂_i` composes `x_i x_{i+1}`. Degeneracy `σ_i`
/// inserts an identity at position `i`.
#[derive(Clone, Debug)]
pub struct Nerve {
    groupoid: FiniteGroupoid,
    p_max: usize,
    /// `cells[p]` is a flat array with stride `max(p, 1)`.
    cells: Vec<Vec<usize>>,
    /// `faces[p][i][σ]`, defined for `p ≥ 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[p][i][σ]`, defined for `p < p_max`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

fn stride(p: usize) -> usize {
    p.max(1)
}

impl Nerve {
    pub fn new(g: &FiniteGroupoid, p_max: usize) -> Result<Self> {
        if p_max > MAX_LEVEL {
            return Err(Error::DegreeOverflow {
                degree: p_max,
                p_max: MAX_LEVEL,
            });
        }
        let mut cells = vec![(0..g.n_objects()).collect::<Vec<_>>()];
        let mut total = g.n_objects();
        if p_max >= 1 {
            cells.push((0..g.n_arrows()).collect());
            total += g.n_arrows();
        }
        for p in 2..=p_max {
            let prev = &cells[p - 1];
            let w = stride(p - 1);
            let mut next = Vec::new();
            for chain in prev.chunks(w) {
                let last = chain[w - 1];
                for &y in g.arrows_into(g.source(last)) {
                    next.extend_from_slice(chain);
                    next.push(y);
                    total += 1;
                    if total > MAX_CELLS {
                        return Err(Error::Capacity(total));
                    }
                }
            }
            cells.push(next);
        }
        let mut nerve = Nerve {
            groupoid: g.clone(),
            p_max,
            cells,
            faces: Vec::new(),
            degeneracies: Vec::new(),
        };
        nerve.faces = (0..=p_max)
            .map(|p| {
                if p == 0 {
                    return Ok(Vec::new());
                }
                (0..=p)
                    .map(|i| (0..nerve.count(p)).map(|s| nerve.compute_face(p, i, s)).collect())
                    .collect()
            })
            .collect::<Result<_>>()?;
        nerve.degeneracies = (0..p_max)
            .map(|p| {
                (0..=p)
                    .map(|i| (0..nerve.count(p)).map(|s| nerve.compute_degeneracy(p, i, s)).collect())
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(nerve)
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    /// `|X_p|`.
    pub fn count(&self, p: usize) -> usize {
        self.cells[p].len() / stride(p)
    }

    /// The chain of cell `index` at level `p` (the object, at level 0).
    pub fn cell(&self, p: usize, index: usize) -> &[usize] {
        let w = stride(p);
        &self.cells[p][index * w..(index + 1) * w]
    }

    /// Position of a chain in level `p`.
    pub fn locate(&self, p: usize, chain: &[usize]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.count(p));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.cell(p, mid).cmp(chain) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn located(&self, p: usize, chain: &[usize]) -> Result<usize> {
        self.locate(p, chain)
            .ok_or_else(|| Error::Consistency(format!("chain {chain:?} missing from level {p}")))
    }

    fn compute_face(&self, p: usize, i: usize, index: usize) -> Result<usize> {
        let g = &self.groupoid;
        let chain = self.cell(p, index);
        if p == 1 {
            return Ok(if i == 0 { g.source(chain[0]) } else { g.target(chain[0]) });
        }
        let face: Vec<usize> = if i == 0 {
            chain[1..].to_vec()
        } else if i == p {
            chain[..p - 1].to_vec()
        } else {
            let mut f = chain[..i - 1].to_vec();
            f.push(g.compose_checked(chain[i - 1], chain[i])?);
            f.extend_from_slice(&chain[i + 1..]);
            f
        };
        self.located(p - 1, &face)
    }

    fn compute_degeneracy(&self, p: usize, i: usize, index: usize) -> Result<usize> {
        let g = &self.groupoid;
        let chain = self.cell(p, index);
        if p == 0 {
            return Ok(g.identity(chain[0]));
        }
        let vertex = if i == 0 { g.target(chain[0]) } else { g.source(chain[i - 1]) };
        let mut d = chain[..i].to_vec();
        d.push(g.identity(vertex));
        d.extend_from_slice(&chain[i..]);
        self.located(p + 1, &d)
    }

    /// `∂_i` of cell `index` at level `p ≥ 1`.
    pub fn face(&self, p: usize, i: usize, index: usize) -> usize {
        self.faces[p][i][index]
    }

    /// `σ_i` of cell `index` at level `p < p_max`.
    pub fn degeneracy(&self, p: usize, i: usize, index: usize) -> usize {
        self.degeneracies[p][i][index]
    }

    /// Exhaustive scan of the simplicial identities wherever both sides are
    /// defined; returns one line per violation.
    pub fn simplicial_identity_check(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut expect = |lhs: usize, rhs: usize, what: String| {
            if lhs != rhs {
                out.push(what);
            }
        };
        for p in 0..=self.p_max {
            for s in 0..self.count(p) {
                // ∂_i ∂_j = ∂_{j-1} ∂_i for i < j
                if p >= 2 {
                    for j in 1..=p {
                        for i in 0..j {
                            let l = self.face(p - 1, i, self.face(p, j, s));
                            let r = self.face(p - 1, j - 1, self.face(p, i, s));
                            expect(l, r, format!("∂{i}∂{j} ≠ ∂{}∂{i} at level {p} cell {s}", j - 1));
                        }
                    }
                }
                if p + 1 <= self.p_max {
                    for j in 0..=p {
                        let d = self.degeneracy(p, j, s);
                        for i in 0..=p + 1 {
                            let l = self.face(p + 1, i, d);
                            if i == j || i == j + 1 {
                                expect(l, s, format!("∂{i}σ{j} ≠ id at level {p} cell {s}"));
                            } else if i < j {
                                let r = self.degeneracy(p - 1, j - 1, self.face(p, i, s));
                                expect(l, r, format!("∂{i}σ{j} ≠ σ{}∂{i} at level {p} cell {s}", j - 1));
                            } else {
                                let r = self.degeneracy(p - 1, j, self.face(p, i - 1, s));
                                expect(l, r, format!("∂{i}σ{j} ≠ σ{j}∂{} at level {p} cell {s}", i - 1));
                            }
                        }
                    }
                }
                // σ_i σ_j = σ_{j+1} σ_i for i ≤ j
                if p + 2 <= self.p_max {
                    for j in 0..=p {
                        for i in 0..=j {
                            let l = self.degeneracy(p + 1, i, self.degeneracy(p, j, s));
                            let r = self.degeneracy(p + 1, j + 1, self.degeneracy(p, i, s));
                            expect(l, r, format!("σ{i}σ{j} ≠ σ{}σ{i} at level {p} cell {s}", j + 1));
                        }
                    }
                }
            }
        }
        out
    }
}
