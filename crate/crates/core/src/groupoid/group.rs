use crate::error::{Error, Result};

/// A finite group given by its full multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses exhaustively.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Domain("a group needs at least one element".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Domain("multiplication table is not closed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Domain(format!(
                            "multiplication is not associative on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Domain("multiplication table has no identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::Domain(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { table, identity, inverse })
    }

    /// `Z_n` with element `k` ↔ residue `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cyclic group of order 0".into()));
        }
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (ng, nh) = (g.order(), h.order());
        let table = (0..ng * nh)
            .map(|a| {
                (0..ng * nh)
                    .map(|b| g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh))
                    .collect()
            })
            .collect();
        FiniteGroup {
            table,
            identity: g.identity * nh + h.identity,
            inverse: (0..ng * nh)
                .map(|a| g.inv(a / nh) * nh + h.inv(a % nh))
                .collect(),
        }
    }

    /// Dihedral group of order `2n`: `r^k` at index `k`, `s r^k` at `n + k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dihedral group of order 0".into()));
        }
        let decode = |x: usize| (x / n, x % n);
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let ((fa, ka), (fb, kb)) = (decode(a), decode(b));
                        // r^k s = s r^{-k}
                        let k = if fb == 0 { ka + kb } else { n - ka % n + kb } % n;
                        ((fa + fb) % 2) * n + k
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Elements of the cyclic subgroup generated by `a`.
    pub fn generated(&self, a: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = a;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, a);
        }
        out.sort_unstable();
        out
    }
}

/// A right action `A × G → A`, `act[x][g] = x·g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightAction {
    table: Vec<Vec<usize>>,
}

impl RightAction {
    /// Checks `x·1 = x` and `(x·g)·h = x·(gh)` exhaustively.
    pub fn new(group: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let order = group.order();
        for (x, row) in table.iter().enumerate() {
            if row.len() != order || row.iter().any(|&y| y >= n) {
                return Err(Error::ActionAxiom(format!("row {x} is not a map G → A")));
            }
            if row[group.identity()] != x {
                return Err(Error::ActionAxiom(format!("identity moves point {x}")));
            }
            for g in 0..order {
                for h in 0..order {
                    if table[row[g]][h] != row[group.mul(g, h)] {
                        return Err(Error::ActionAxiom(format!(
                            "(x·g)·h ≠ x·(gh) at x={x}, g={g}, h={h}"
                        )));
                    }
                }
            }
        }
        Ok(RightAction { table })
    }

    pub fn trivial(group: &FiniteGroup, points: usize) -> Self {
        RightAction {
            table: (0..points).map(|x| vec![x; group.order()]).collect(),
        }
    }

    /// `G` acting on itself by right translation.
    pub fn regular(group: &FiniteGroup) -> Self {
        RightAction {
            table: group.table().to_vec(),
        }
    }

    /// Right cosets `Hg` of a subgroup, acted on by right multiplication.
    /// The subgroup must be closed under multiplication.
    pub fn cosets(group: &FiniteGroup, subgroup: &[usize]) -> Result<Self> {
        let mut labels = vec![usize::MAX; group.order()];
        let mut count = 0;
        for g in 0..group.order() {
            if labels[g] == usize::MAX {
                for &h in subgroup {
                    labels[group.mul(h, g)] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<usize> = (0..count)
            .map(|c| labels.iter().position(|&l| l == c).unwrap_or(0))
            .collect();
        let table = reps
            .iter()
            .map(|&r| (0..group.order()).map(|g| labels[group.mul(r, g)]).collect())
            .collect();
        Self::new(group, table)
    }

    /// Disjoint union of two actions of the same group.
    pub fn disjoint_union(&self, other: &RightAction) -> RightAction {
        let shift = self.points();
        let mut table = self.table.clone();
        table.extend(other.table.iter().map(|row| row.iter().map(|y| y + shift).collect()));
        RightAction { table }
    }

    pub fn points(&self) -> usize {
        self.table.len()
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.table[x][g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_are_groups() {
        for g in [
            FiniteGroup::cyclic(5).unwrap(),
            FiniteGroup::dihedral(3).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
        ] {
            FiniteGroup::from_table(g.table().to_vec()).unwrap();
        }
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap());
        assert_eq!(FiniteGroup::from_table(p.table().to_vec()).unwrap(), p);
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d = FiniteGroup::dihedral(3).unwrap();
        assert_ne!(d.mul(1, 3), d.mul(3, 1));
        assert_eq!(d.element_order(3), 2);
        assert_eq!(d.element_order(1), 3);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn actions() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let sub = g.generated(3);
        let cosets = RightAction::cosets(&g, &sub).unwrap();
        assert_eq!(cosets.points(), 3);
        let both = cosets.disjoint_union(&RightAction::trivial(&g, 2));
        RightAction::new(&g, both.table().to_vec()).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert!(matches!(
            RightAction::new(&z2, vec![vec![1, 0], vec![0, 1]]),
            Err(Error::ActionAxiom(_))
        ));
    }
}
