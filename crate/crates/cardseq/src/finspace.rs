//! Finite scattered-space analogue: posets under the down-set topology,
//! Cantor–Bendixson levels, open subspaces, disjoint unions, and the toy
//! good space realising `[y]^ζ ⌢ [yz]^(δ̂-ζ)` targets.
//!
//! Open sets are the downward closed sets; the basic neighbourhood of a
//! point is its down-set. Every finite poset is locally compact, scattered
//! and Hausdorff under this reading, and the Cantor–Bendixson level of a
//! point is its foundation rank, so every sequence claim becomes machine
//! checkable.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::condition::{Condition, Rel};
use crate::error::Error;

/// A finite poset carrying the down-set topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSpace {
    leq: Rel,
}

impl FinSpace {
    /// Builds from covering pairs `(lower, upper)`; the reflexive-transitive
    /// closure is taken, and cycles are rejected.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<FinSpace, Error> {
        let mut rel = Rel::new(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::OutOfRange(format!("pair ({i}, {j}) out of range")));
            }
            rel.set(i, j, true);
        }
        let leq = rel.transitive_closure();
        if let Some((i, j)) = leq.antisymmetry_violation() {
            return Err(Error::OutOfRange(format!("cycle through {i} and {j}")));
        }
        Ok(FinSpace { leq })
    }

    pub fn antichain(n: usize) -> FinSpace {
        FinSpace { leq: Rel::identity(n) }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    /// Cantor–Bendixson levels: level 0 are the minimal (isolated) points,
    /// level `a` the minimal points once lower levels are removed. The
    /// concatenated levels exhaust the space.
    pub fn cb_levels(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut remaining: BTreeSet<usize> = (0..n).collect();
        let mut out = Vec::new();
        while !remaining.is_empty() {
            let minimal: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| remaining.iter().all(|&j| j == i || !self.leq.get(j, i)))
                .collect();
            debug_assert!(!minimal.is_empty(), "finite posets always have minimal points");
            for &i in &minimal {
                remaining.remove(&i);
            }
            out.push(minimal);
        }
        out
    }

    /// The level sizes, the finite stand-in for the cardinal sequence.
    pub fn seq(&self) -> Vec<usize> {
        self.cb_levels().iter().map(|l| l.len()).collect()
    }

    /// Height: the number of nonempty levels.
    pub fn height(&self) -> usize {
        self.cb_levels().len()
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq.get(j, i)).collect()
    }

    pub fn is_down_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset
            .iter()
            .all(|&i| (0..self.len()).all(|j| !self.leq.get(j, i) || subset.contains(&j)))
    }

    /// The open subspace on a downward closed subset, with the element
    /// mapping from new indices to old ones.
    pub fn open_subspace(&self, subset: &BTreeSet<usize>) -> Result<(FinSpace, Vec<usize>), Error> {
        if !self.is_down_closed(subset) {
            return Err(Error::OpenRequired);
        }
        let map: Vec<usize> = subset.iter().copied().collect();
        let mut leq = Rel::new(map.len());
        for (a, &i) in map.iter().enumerate() {
            for (b, &j) in map.iter().enumerate() {
                if self.leq.get(i, j) {
                    leq.set(a, b, true);
                }
            }
        }
        Ok((FinSpace { leq }, map))
    }

    /// Disjoint union; elements are renumbered block by block.
    pub fn disjoint_union(spaces: &[FinSpace]) -> FinSpace {
        let n: usize = spaces.iter().map(|s| s.len()).sum();
        let mut leq = Rel::identity(n);
        let mut offset = 0;
        for s in spaces {
            for i in 0..s.len() {
                for j in 0..s.len() {
                    if s.leq.get(i, j) {
                        leq.set(offset + i, offset + j, true);
                    }
                }
            }
            offset += s.len();
        }
        FinSpace { leq }
    }

    /// The poset of a condition's points under its order.
    pub fn from_condition(c: &Condition) -> FinSpace {
        let mut leq = Rel::identity(c.len());
        for i in 0..c.len() {
            for j in 0..c.len() {
                if c.leq(i, j) {
                    leq.set(i, j, true);
                }
            }
        }
        FinSpace { leq }
    }

    /// GraphViz export with one rank per Cantor–Bendixson level and covering
    /// edges only.
    pub fn to_dot(&self, name: &str) -> String {
        let levels = self.cb_levels();
        let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
        for (a, level) in levels.iter().enumerate() {
            out.push_str("  { rank=same;");
            for &i in level {
                out.push_str(&format!(" n{i};"));
            }
            out.push_str(" }\n");
            for &i in level {
                out.push_str(&format!(
                    "  n{i} [label=\"{i}\", style=filled, fillcolor=\"/blues9/{}\"];\n",
                    (a % 9) + 1
                ));
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq.get(i, j) {
                    let covered = (0..self.len())
                        .any(|k| k != i && k != j && self.leq.get(i, k) && self.leq.get(k, j));
                    if !covered {
                        out.push_str(&format!("  n{i} -> n{j};\n"));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The toy good space: a `Y`-part of constant level size `y` over `heights`
/// levels, plus for each `ζ` a block `Y_ζ` lifting the level sizes to `yz`
/// from level `ζ` on.
#[derive(Debug, Clone)]
pub struct ToyGoodSpace {
    pub space: FinSpace,
    pub y_part: Vec<usize>,
    pub z_parts: Vec<(usize, Vec<usize>)>,
    pub heights: usize,
}

/// Builds the toy good space. `Y` is `y` parallel chains of length
/// `heights`; `Y_ζ` is `yz - y` chains of length `heights - ζ` whose bottoms
/// sit above a `Y`-point of level `ζ - 1` (free-standing for `ζ = 0`).
pub fn toy_good_space(
    heights: usize,
    widths: (usize, usize),
    zetas: &BTreeSet<usize>,
) -> Result<ToyGoodSpace, Error> {
    let (y, yz) = widths;
    if heights == 0 || heights > 8 {
        return Err(Error::Infeasible(format!("heights {heights} outside 1..=8")));
    }
    if y == 0 || yz <= y {
        return Err(Error::Infeasible(format!("widths ({y}, {yz}) need 0 < y < yz")));
    }
    if let Some(&z) = zetas.iter().find(|&&z| z >= heights) {
        return Err(Error::Infeasible(format!("zeta {z} not below heights {heights}")));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    let mut chain = |pairs: &mut Vec<(usize, usize)>, len: usize, root: Option<usize>| {
        let start = next;
        for p in 0..len {
            if p > 0 {
                pairs.push((start + p - 1, start + p));
            } else if let Some(r) = root {
                pairs.push((r, start));
            }
            next += 1;
        }
        (start..next).collect::<Vec<usize>>()
    };
    let mut y_part = Vec::new();
    let mut y_columns = Vec::new();
    for _ in 0..y {
        let col = chain(&mut pairs, heights, None);
        y_part.extend(col.iter().copied());
        y_columns.push(col);
    }
    let mut z_parts = Vec::new();
    for &zeta in zetas {
        let mut part = Vec::new();
        for _ in 0..(yz - y) {
            let root = if zeta == 0 { None } else { Some(y_columns[0][zeta - 1]) };
            part.extend(chain(&mut pairs, heights - zeta, root));
        }
        z_parts.push((zeta, part));
    }
    let space = FinSpace::new(next, &pairs)?;
    Ok(ToyGoodSpace { space, y_part, z_parts, heights })
}

impl ToyGoodSpace {
    /// `Y ∪ Y_ζ` as a set of indices.
    pub fn y_with(&self, zeta: usize) -> Result<BTreeSet<usize>, Error> {
        let part = self
            .z_parts
            .iter()
            .find(|(z, _)| *z == zeta)
            .ok_or_else(|| Error::OutOfRange(format!("no block for zeta {zeta}")))?;
        let mut set: BTreeSet<usize> = self.y_part.iter().copied().collect();
        set.extend(part.1.iter().copied());
        Ok(set)
    }

    /// Plan-driven extraction: `Z = Y ∪ ⋃ { levels < f(ζ) of Y ∪ Y_ζ }`.
    pub fn extract(&self, plan: &[(usize, usize)]) -> Result<FinSpace, Error> {
        let mut z: BTreeSet<usize> = self.y_part.iter().copied().collect();
        for &(zeta, f_zeta) in plan {
            let union_set = self.y_with(zeta)?;
            let (sub, map) = self.space.open_subspace(&union_set)?;
            for (a, level) in sub.cb_levels().iter().enumerate() {
                if a >= f_zeta {
                    break;
                }
                for &i in level {
                    z.insert(map[i]);
                }
            }
        }
        Ok(self.space.open_subspace(&z)?.0)
    }
}

/// The finite shadow of the `D_κ` test for `{y, yz}`-valued targets: first
/// value `y`, values from `{y, yz}`, and (by successor closure, every
/// positive finite ordinal being a successor) at most one switch, upward.
pub fn finite_d_analogue(target: &[usize], widths: (usize, usize)) -> bool {
    let (y, yz) = widths;
    if target.first() != Some(&y) {
        return false;
    }
    if !target.iter().all(|&v| v == y || v == yz) {
        return false;
    }
    let mut switched = false;
    for w in target.windows(2) {
        match (w[0] == yz, w[1] == yz) {
            (false, true) if switched => return false,
            (false, true) => switched = true,
            (true, false) => return false,
            _ => {}
        }
    }
    true
}

/// The selection-plan formula over toy heights: each `yz`-run start `ζ`
/// paired with `f(ζ)`, the first later position valued `y` again (or the
/// height).
pub fn toy_plan(target: &[usize], widths: (usize, usize)) -> Result<Vec<(usize, usize)>, Error> {
    if !finite_d_analogue(target, widths) {
        return Err(Error::NotInD(format!("{target:?} fails the finite analogue")));
    }
    let (_, yz) = widths;
    let mut plan = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, &v) in target.iter().enumerate() {
        match (run_start, v == yz) {
            (None, true) => run_start = Some(i),
            (Some(s), false) => {
                plan.push((s, i));
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = run_start {
        plan.push((s, target.len()));
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_levels() {
        let s = FinSpace::antichain(4);
        assert_eq!(s.seq(), alloc::vec![4]);
        assert_eq!(s.height(), 1);
    }

    #[test]
    fn fan_levels() {
        // n minimal points below one top: levels [n, 1]
        let n = 5;
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n)).collect();
        let s = FinSpace::new(n + 1, &pairs).unwrap();
        assert_eq!(s.seq(), alloc::vec![n, 1]);
    }

    #[test]
    fn cycles_rejected() {
        assert!(FinSpace::new(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn union_is_levelwise_sum() {
        let a = FinSpace::antichain(2);
        let b = FinSpace::new(3, &[(0, 2), (1, 2)]).unwrap();
        let u = FinSpace::disjoint_union(&[a.clone(), b]);
        assert_eq!(u.seq(), alloc::vec![4, 1]);
        // union with the empty space is the identity
        let v = FinSpace::disjoint_union(&[a.clone(), FinSpace::antichain(0)]);
        assert_eq!(v.seq(), a.seq());
    }

    #[test]
    fn open_subspace_levels_are_intersections() {
        // chain of 3 with an extra minimal point below the middle
        let s = FinSpace::new(4, &[(0, 1), (1, 2), (3, 1)]).unwrap();
        let down: BTreeSet<usize> = [0, 1, 3].into_iter().collect();
        let (sub, map) = s.open_subspace(&down).unwrap();
        let ambient = s.cb_levels();
        for (a, level) in sub.cb_levels().iter().enumerate() {
            for &i in level {
                assert!(ambient[a].contains(&map[i]));
            }
        }
        let not_down: BTreeSet<usize> = [2].into_iter().collect();
        assert_eq!(s.open_subspace(&not_down).unwrap_err(), Error::OpenRequired);
    }

    #[test]
    fn toy_good_space_clauses() {
        let zetas: BTreeSet<usize> = [1].into_iter().collect();
        let toy = toy_good_space(2, (2, 5), &zetas).unwrap();
        // clause (1): SEQ(Y) constant y
        let y_set: BTreeSet<usize> = toy.y_part.iter().copied().collect();
        let (y_space, _) = toy.space.open_subspace(&y_set).unwrap();
        assert_eq!(y_space.seq(), alloc::vec![2, 2]);
        // clause (2): SEQ(Y ∪ Y_1) = [y, yz]
        let (u, _) = toy.space.open_subspace(&toy.y_with(1).unwrap()).unwrap();
        assert_eq!(u.seq(), alloc::vec![2, 5]);
        // degenerate single-level space
        let toy = toy_good_space(1, (1, 3), &[0].into_iter().collect()).unwrap();
        let (u, _) = toy.space.open_subspace(&toy.y_with(0).unwrap()).unwrap();
        assert_eq!(u.seq(), alloc::vec![3]);
        assert!(toy_good_space(2, (3, 2), &BTreeSet::new()).is_err());
        assert!(toy_good_space(0, (1, 2), &BTreeSet::new()).is_err());
        assert!(toy_good_space(9, (1, 2), &BTreeSet::new()).is_err());
    }

    #[test]
    fn extraction_matches_target() {
        let zetas: BTreeSet<usize> = [1, 2].into_iter().collect();
        let toy = toy_good_space(3, (2, 4), &zetas).unwrap();
        let target = alloc::vec![2, 4, 4];
        let plan = toy_plan(&target, (2, 4)).unwrap();
        assert_eq!(plan, alloc::vec![(1, 3)]);
        let z = toy.extract(&plan).unwrap();
        assert_eq!(z.seq(), target);
        // constant target: empty plan, Z = Y
        let target = alloc::vec![2, 2, 2];
        let plan = toy_plan(&target, (2, 4)).unwrap();
        assert!(plan.is_empty());
        assert_eq!(toy.extract(&plan).unwrap().seq(), target);
    }

    #[test]
    fn finite_analogue_filters() {
        assert!(finite_d_analogue(&[2, 2, 4], (2, 4)));
        assert!(finite_d_analogue(&[2, 4, 4], (2, 4)));
        assert!(!finite_d_analogue(&[4, 4], (2, 4)));
        assert!(!finite_d_analogue(&[2, 4, 2], (2, 4)));
        assert!(!finite_d_analogue(&[2, 3], (2, 4)));
        assert!(toy_plan(&[4, 2], (2, 4)).is_err());
    }

    #[test]
    fn condition_levels_increase_along_order() {
        use crate::ordinal::Ordinal;
        use crate::space::Point;
        let points = alloc::vec![
            Point::s(Ordinal::from_nat(1), 0),
            Point::s("w2^1".parse::<Ordinal>().unwrap(), 1),
            Point::s("w2^2".parse::<Ordinal>().unwrap(), 2),
        ];
        let mut inf = alloc::collections::BTreeMap::new();
        inf.insert((0usize, 1usize), Some(0));
        inf.insert((0, 2), Some(0));
        inf.insert((1, 2), Some(1));
        let c = Condition::new(points, &[(0, 1), (0, 2), (1, 2)], inf);
        let s = FinSpace::from_condition(&c);
        let levels = s.cb_levels();
        let level_of = |i: usize| levels.iter().position(|l| l.contains(&i)).unwrap();
        for i in 0..c.len() {
            for j in 0..c.len() {
                if c.lt(i, j) {
                    assert!(level_of(i) < level_of(j));
                }
            }
        }
    }
}
