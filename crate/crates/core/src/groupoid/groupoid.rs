use std::fmt;

use crate::error::{Error, Result};

use super::group::{FiniteGroup, RightAction};

/// Largest arrow count accepted (the composition table is dense).
pub const MAX_ARROWS: usize = 4096;

/// A finite groupoid `X₁ ⇉ X₀`. A pair `(x, y)` is composable when
/// `s(x) = t(y)`, and then `s(xy) = s(y)`, `t(xy) = t(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    compose: Vec<Option<usize>>,
    by_target: Vec<Vec<usize>>,
}

/// The groupoid axioms, as named in diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    /// A composable pair has no recorded composite.
    Totality,
    /// `s(xy) = s(y)` and `t(xy) = t(x)`.
    SourceTarget,
    Associativity,
    /// `s(e(o)) = o = t(e(o))`.
    IdentitySection,
    /// `e(t(x))·x = x = x·e(s(x))`.
    UnitLaw,
    /// `s(i(x)) = t(x)` and `t(i(x)) = s(x)`.
    InverseSourceTarget,
    /// `x·i(x) = e(t(x))` and `i(x)·x = e(s(x))`.
    InverseLaw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.axiom, self.detail)
    }
}

fn index_error(what: &str, index: usize, bound: usize) -> Error {
    Error::Domain(format!("{what} {index} out of range 0..{bound}"))
}

impl FiniteGroupoid {
    /// Builds a groupoid from explicit structure tables. Only index ranges and
    /// consistency of repeated composition entries are checked; use
    /// [`axioms_check`] for the axioms.
    pub fn from_tables(
        objects: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = source.len();
        let n_obj = objects.len();
        if n > MAX_ARROWS {
            return Err(Error::Capacity(n));
        }
        if target.len() != n || inverse.len() != n || identity.len() != n_obj {
            return Err(Error::Domain("structure tables have inconsistent lengths".into()));
        }
        for (&s, &t) in source.iter().zip(&target) {
            if s >= n_obj || t >= n_obj {
                return Err(index_error("object", s.max(t), n_obj));
            }
        }
        if let Some(&bad) = identity.iter().chain(&inverse).find(|&&a| a >= n) {
            return Err(index_error("arrow", bad, n));
        }
        let mut compose = vec![None; n * n];
        for &(x, y, xy) in compositions {
            if x >= n || y >= n || xy >= n {
                return Err(index_error("arrow", x.max(y).max(xy), n));
            }
            match compose[x * n + y] {
                Some(old) if old != xy => {
                    return Err(Error::Domain(format!(
                        "composition of ({x},{y}) given as both {old} and {xy}"
                    )))
                }
                _ => compose[x * n + y] = Some(xy),
            }
        }
        let mut by_target = vec![Vec::new(); n_obj];
        for (a, &t) in target.iter().enumerate() {
            by_target[t].push(a);
        }
        Ok(FiniteGroupoid {
            objects,
            source,
            target,
            identity,
            inverse,
            compose,
            by_target,
        })
    }

    /// Builds a groupoid from its composition alone, locating identities and
    /// inverses by search.
    pub fn from_composition(
        objects: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n_obj = objects.len();
        let n = source.len();
        let mut g = Self::from_tables(
            objects,
            source,
            target,
            vec![0; n_obj],
            vec![0; n],
            compositions,
        )?;
        if n == 0 && n_obj > 0 {
            return Err(Error::Domain("objects without identity arrows".into()));
        }
        for o in 0..n_obj {
            let e = (0..n)
                .filter(|&e| g.source[e] == o && g.target[e] == o)
                .find(|&e| {
                    (0..n).all(|x| {
                        (g.target[x] != o || g.compose(e, x) == Some(x))
                            && (g.source[x] != o || g.compose(x, e) == Some(x))
                    })
                })
                .ok_or_else(|| Error::Domain(format!("object {o} has no identity arrow")))?;
            g.identity[o] = e;
        }
        for x in 0..n {
            let (s, t) = (g.source[x], g.target[x]);
            let inv = (0..n)
                .filter(|&y| g.source[y] == t && g.target[y] == s)
                .find(|&y| {
                    g.compose(x, y) == Some(g.identity[t]) && g.compose(y, x) == Some(g.identity[s])
                })
                .ok_or_else(|| Error::Domain(format!("arrow {x} has no inverse")))?;
            g.inverse[x] = inv;
        }
        Ok(g)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn source(&self, x: usize) -> usize {
        self.source[x]
    }

    pub fn target(&self, x: usize) -> usize {
        self.target[x]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn composable(&self, x: usize, y: usize) -> bool {
        self.source[x] == self.target[y]
    }

    /// `x·y`, or `None` when the pair is not composable or unrecorded.
    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        if self.composable(x, y) {
            self.compose[x * self.n_arrows() + y]
        } else {
            None
        }
    }

    /// `x·y` for a pair known to be composable in a validated groupoid.
    pub fn compose_checked(&self, x: usize, y: usize) -> Result<usize> {
        self.compose(x, y)
            .ok_or_else(|| Error::Domain(format!("arrows {x} and {y} do not compose")))
    }

    /// Arrows with target `o`, ascending.
    pub fn arrows_into(&self, o: usize) -> &[usize] {
        &self.by_target[o]
    }

    /// All composable pairs `(x, y)`, lexicographically.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_arrows())
            .flat_map(move |x| self.by_target[self.source[x]].iter().map(move |&y| (x, y)))
    }

    /// Overwrites one composite. Intended for building defective groupoids
    /// whose diagnostics are under test.
    pub fn set_composition(&mut self, x: usize, y: usize, xy: usize) {
        let n = self.n_arrows();
        self.compose[x * n + y] = Some(xy);
    }

    /// Every composite recorded, as `(x, y, xy)`.
    pub fn composition_entries(&self) -> Vec<(usize, usize, usize)> {
        self.composable_pairs()
            .filter_map(|(x, y)| self.compose(x, y).map(|z| (x, y, z)))
            .collect()
    }
}

/// Exhaustive check of the groupoid axioms; empty iff all hold.
pub fn axioms_check(g: &FiniteGroupoid) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let mut report = |axiom, detail: String| out.push(AxiomViolation { axiom, detail });
    let pairs: Vec<(usize, usize)> = g.composable_pairs().collect();
    for &(x, y) in &pairs {
        match g.compose(x, y) {
            None => report(Axiom::Totality, format!("({x},{y}) composable but missing")),
            Some(xy) => {
                if g.source(xy) != g.source(y) || g.target(xy) != g.target(x) {
                    report(Axiom::SourceTarget, format!("{x}·{y} = {xy}"));
                }
            }
        }
    }
    for &(x, y) in &pairs {
        let Some(xy) = g.compose(x, y) else { continue };
        for &z in g.arrows_into(g.source(y)) {
            let left = g.compose(xy, z);
            let right = g.compose(y, z).and_then(|yz| g.compose(x, yz));
            if left != right {
                report(
                    Axiom::Associativity,
                    format!("({x}·{y})·{z} = {left:?} but {x}·({y}·{z}) = {right:?}"),
                );
            }
        }
    }
    for o in 0..g.n_objects() {
        let e = g.identity(o);
        if g.source(e) != o || g.target(e) != o {
            report(Axiom::IdentitySection, format!("e({o}) = {e} is not a loop at {o}"));
        }
    }
    for x in 0..g.n_arrows() {
        let (s, t) = (g.source(x), g.target(x));
        if g.compose(g.identity(t), x) != Some(x) || g.compose(x, g.identity(s)) != Some(x) {
            report(Axiom::UnitLaw, format!("identities do not fix arrow {x}"));
        }
        let i = g.inverse(x);
        if g.source(i) != t || g.target(i) != s {
            report(Axiom::InverseSourceTarget, format!("i({x}) = {i} has wrong ends"));
        }
        if g.compose(x, i) != Some(g.identity(t)) || g.compose(i, x) != Some(g.identity(s)) {
            report(Axiom::InverseLaw, format!("{x}·i({x}) or i({x})·{x} is not an identity"));
        }
    }
    out
}

/// The action groupoid `A ⋊ G` of a right action.
///
/// Arrow `(x, g)` sits at index `x·|G| + g` and runs from `s(x,g) = x·g` to
/// `t(x,g) = x`, so that `((x,g), (x·g,g'))` is composable with composite
/// `(x, g g')`. Identities are `(x, 1)` and inverses `(x·g, g⁻¹)`.
pub fn action_groupoid(action: &RightAction, group: &FiniteGroup) -> Result<FiniteGroupoid> {
    let action = RightAction::new(group, action.table().to_vec())?;
    let (na, ng) = (action.points(), group.order());
    if na * ng > MAX_ARROWS {
        return Err(Error::Capacity(na * ng));
    }
    let arrow = |x: usize, g: usize| x * ng + g;
    let mut source = Vec::with_capacity(na * ng);
    let mut target = Vec::with_capacity(na * ng);
    let mut inverse = Vec::with_capacity(na * ng);
    let mut compositions = Vec::with_capacity(na * ng * ng);
    for x in 0..na {
        for g in 0..ng {
            let xg = action.act(x, g);
            source.push(xg);
            target.push(x);
            inverse.push(arrow(xg, group.inv(g)));
            for h in 0..ng {
                compositions.push((arrow(x, g), arrow(xg, h), arrow(x, group.mul(g, h))));
            }
        }
    }
    FiniteGroupoid::from_tables(
        (0..na).map(|x| x.to_string()).collect(),
        source,
        target,
        (0..na).map(|x| arrow(x, group.identity())).collect(),
        inverse,
        &compositions,
    )
}

/// Decodes an action-groupoid arrow index into `(point, group element)`.
pub fn action_arrow(index: usize, group: &FiniteGroup) -> (usize, usize) {
    (index / group.order(), index % group.order())
}
