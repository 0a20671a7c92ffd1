//! The underlying set `X`: blocks, projections, block orbits, point orbits
//! and the isolation predicate.
//!
//! `X` itself has cardinality κ⁺ and is never materialised; only the finite
//! point sets of conditions ever exist in memory.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::intervals::{Interval, IntervalTree};
use crate::orbits::{basic_orbit, extended_orbit, OrdinalSet, SegBound};
use crate::ordinal::{CardinalAtom, Cofinality, Ordinal};

/// A block of `X`: either the ground block `S` or a pair block `⟨ζ,η⟩` with
/// `cf(ζ) ∈ {κ, κ⁺}` and `η < κ⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockId {
    S,
    Pair { zeta: Ordinal, eta: Ordinal },
}

impl BlockId {
    pub fn pair(zeta: Ordinal, eta: Ordinal) -> BlockId {
        BlockId::Pair { zeta, eta }
    }

    pub fn is_s(&self) -> bool {
        matches!(self, BlockId::S)
    }

    /// The block base `ζ` for pair blocks.
    pub fn zeta(&self) -> Option<&Ordinal> {
        match self {
            BlockId::S => None,
            BlockId::Pair { zeta, .. } => Some(zeta),
        }
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockId::S => write!(f, "S"),
            BlockId::Pair { zeta, eta } => write!(f, "<{zeta}, {eta}>"),
        }
    }
}

impl serde::Serialize for BlockId {
    /// JSON encoding: `"S"` or the pair `[ζ, η]`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            BlockId::S => serializer.serialize_str("S"),
            BlockId::Pair { zeta, eta } => (zeta, eta).serialize(serializer),
        }
    }
}

impl<'de> serde::Deserialize<'de> for BlockId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<BlockId, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = BlockId;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "\"S\" or a pair [zeta, eta]")
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<BlockId, E> {
                if s == "S" {
                    Ok(BlockId::S)
                } else {
                    Err(E::custom("expected \"S\""))
                }
            }

            fn visit_seq<A: serde::de::SeqAccess<'de>>(self, mut seq: A) -> Result<BlockId, A::Error> {
                let zeta = seq
                    .next_element::<Ordinal>()?
                    .ok_or_else(|| serde::de::Error::custom("missing zeta"))?;
                let eta = seq
                    .next_element::<Ordinal>()?
                    .ok_or_else(|| serde::de::Error::custom("missing eta"))?;
                Ok(BlockId::Pair { zeta, eta })
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// A point of `X`. Points of `B_S` are `⟨α,ν⟩`; points of `B_{⟨ζ,η⟩}` are
/// `⟨ζ,η,α,ν⟩` with `ζ <= α`. The coordinate `ν < κ` only distinguishes
/// points and never enters a formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub block: BlockId,
    pub alpha: Ordinal,
    pub nu: Ordinal,
}

impl Point {
    pub fn s(alpha: Ordinal, nu: u64) -> Point {
        Point { block: BlockId::S, alpha, nu: Ordinal::from_nat(nu) }
    }

    pub fn in_block(block: BlockId, alpha: Ordinal, nu: u64) -> Point {
        Point { block, alpha, nu: Ordinal::from_nat(nu) }
    }

    /// `π(x)`: the main ordinal coordinate.
    pub fn pi(&self) -> &Ordinal {
        &self.alpha
    }

    /// `π₋(x)`: the block base for pair blocks, `π(x)` on `B_S`.
    pub fn pi_minus(&self) -> &Ordinal {
        match &self.block {
            BlockId::S => &self.alpha,
            BlockId::Pair { zeta, .. } => zeta,
        }
    }

    /// `π_B(x)`: the block containing the point.
    pub fn pi_block(&self) -> &BlockId {
        &self.block
    }

    /// True when `π(x) = π₋(x)`: on `B_S`, and at pair-block base points.
    pub fn is_base(&self) -> bool {
        self.pi() == self.pi_minus()
    }

    /// Structural well-formedness with respect to the tree parameters.
    pub fn well_formed(&self, tree: &IntervalTree) -> Result<(), Error> {
        if &self.alpha >= tree.delta() {
            return Err(Error::OutOfRange(format!("point alpha {} not below delta", self.alpha)));
        }
        if !self.nu.below_kappa() {
            return Err(Error::OutOfRange(format!("point nu {} not below kappa", self.nu)));
        }
        if let BlockId::Pair { zeta, eta } = &self.block {
            if !matches!(
                zeta.cofinality(),
                Cofinality::Cof(CardinalAtom::Kappa) | Cofinality::Cof(CardinalAtom::KappaPlus)
            ) {
                return Err(Error::OutOfRange(format!("block base {zeta} has small cofinality")));
            }
            if zeta > &self.alpha {
                return Err(Error::OutOfRange(format!(
                    "point alpha {} below its block base {zeta}",
                    self.alpha
                )));
            }
            if !eta.below_kappa_plus() {
                return Err(Error::OutOfRange(format!("block index {eta} not below kappa-plus")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.block {
            BlockId::S => write!(f, "<{}, {}>", self.alpha, self.nu),
            BlockId::Pair { zeta, eta } => write!(f, "<{zeta}, {eta}, {}, {}>", self.alpha, self.nu),
        }
    }
}

/// Block orbit `o_B(⟨ζ,η⟩)`: `ō(ζ)` when `cf(ζ) = κ`, and
/// `o(ζ) ∪ {ε^ζ_ν : ν < η}` (equally `ō(ζ) ∩ ε^ζ_η`) when `cf(ζ) = κ⁺`.
pub fn block_orbit(tree: &IntervalTree, block: &BlockId) -> Result<OrdinalSet, Error> {
    let BlockId::Pair { zeta, eta } = block else {
        return Err(Error::IsSBlock);
    };
    match zeta.cofinality() {
        Cofinality::Cof(CardinalAtom::Kappa) => extended_orbit(tree, zeta),
        Cofinality::Cof(CardinalAtom::KappaPlus) => {
            let (_, big_j) = tree.limit_interval(zeta)?;
            let seg = OrdinalSet::seg(big_j, None, SegBound::IndexBelow(eta.clone()));
            Ok(basic_orbit(tree, zeta)?.union(seg))
        }
        _ => Err(Error::CofTooSmall),
    }
}

/// Point orbit `o*(x)`: `o(α)` on `B_S`, and `o_B(π_B(x)) ∪ (o(α) \ ζ)` on a
/// pair block.
pub fn point_orbit(tree: &IntervalTree, x: &Point) -> Result<OrdinalSet, Error> {
    match &x.block {
        BlockId::S => basic_orbit(tree, &x.alpha),
        BlockId::Pair { zeta, .. } => {
            let above = basic_orbit(tree, &x.alpha)?.cut_below(zeta);
            Ok(block_orbit(tree, &x.block)?.union(above))
        }
    }
}

/// `π_x(y)`: `π(y)` when `x` and `y` share a block, `π₋(y)` otherwise.
/// An interval isolates `x` from `y` exactly when
/// `bot Λ < π(x) < top Λ <= π_x(y)`.
pub fn pi_x(x: &Point, y: &Point) -> Ordinal {
    if x.pi_block() == y.pi_block() {
        y.pi().clone()
    } else {
        y.pi_minus().clone()
    }
}

/// The isolation predicate `Λ isolates x from y`.
pub fn isolates(lambda: &Interval, x: &Point, y: &Point) -> bool {
    lambda.bot() < x.pi() && x.pi() < lambda.top() && lambda.top() <= &pi_x(x, y)
}

/// All intervals of the tree isolating `x` from `y`. Every isolating
/// interval contains `π(x)` strictly above its bottom, so it equals
/// `I(π(x), m)` for some level `m >= 1`; the scan over the tower of `π(x)`
/// is therefore complete.
pub fn isolating_intervals(
    tree: &IntervalTree,
    x: &Point,
    y: &Point,
) -> Result<Vec<Interval>, Error> {
    let mut out = Vec::new();
    for (_, interval) in tree.tower(x.pi())? {
        if isolates(&interval, x, y) {
            out.push(interval);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn example_tree() -> IntervalTree {
        IntervalTree::new(o("w2^2 + 1")).unwrap()
    }

    #[test]
    fn projections() {
        let s = Point::s(o("w2^1*3"), 2);
        assert_eq!(s.pi(), &o("w2^1*3"));
        assert_eq!(s.pi_minus(), &o("w2^1*3"));
        assert!(s.pi_block().is_s());
        let b = BlockId::pair(o("w2^1"), o("3"));
        let p = Point::in_block(b.clone(), o("w2^1*5"), 0);
        assert_eq!(p.pi(), &o("w2^1*5"));
        assert_eq!(p.pi_minus(), &o("w2^1"));
        assert_eq!(p.pi_block(), &b);
        assert!(!p.is_base());
        assert!(Point::in_block(b, o("w2^1"), 0).is_base());
    }

    #[test]
    fn well_formedness() {
        let t = example_tree();
        assert!(Point::s(o("w2^2"), 0).well_formed(&t).is_ok());
        assert!(Point::s(o("w2^2 + 1"), 0).well_formed(&t).is_err());
        // block base must have cofinality κ or κ⁺
        let bad = BlockId::pair(o("w^1"), o("0"));
        assert!(Point::in_block(bad, o("w^1"), 0).well_formed(&t).is_err());
        // alpha below the block base
        let b = BlockId::pair(o("w2^1"), o("0"));
        assert!(Point::in_block(b, o("5"), 0).well_formed(&t).is_err());
    }

    #[test]
    fn block_orbits() {
        let t = example_tree();
        // cf(ζ) = κ: the full extended orbit
        let b = BlockId::pair(o("w2^1*w1^1"), o("7"));
        let ob = block_orbit(&t, &b).unwrap();
        for x in ["0", "w2^1*4", "w2^1*w^1"] {
            assert!(ob.member(&o(x)));
        }
        assert!(!ob.member(&o("w2^1*w1^1")));
        // cf(ζ) = κ⁺, η = 0: just the basic orbit
        let b = BlockId::pair(o("w2^2"), o("0"));
        let ob = block_orbit(&t, &b).unwrap();
        assert_eq!(ob.enumerate(3), alloc::vec![o("0")]);
        // cf(ζ) = κ⁺, η = 3: {0, ω₂, ω₂·2} ∪ o(ζ)
        let b = BlockId::pair(o("w2^2"), o("3"));
        let ob = block_orbit(&t, &b).unwrap();
        assert_eq!(ob.enumerate(5), alloc::vec![o("0"), o("w2^1"), o("w2^1*2")]);
        assert!(block_orbit(&t, &BlockId::S).is_err());
        assert!(ob.card_at_most_kappa());
    }

    #[test]
    fn point_orbits() {
        let t = example_tree();
        // o*(S-point) = o(α)
        let x = Point::s(o("w2^2"), 0);
        let orb = point_orbit(&t, &x).unwrap();
        assert_eq!(orb.enumerate(3), alloc::vec![o("0")]);
        // base point of a block: o* = o_B
        let b = BlockId::pair(o("w2^2"), o("3"));
        let base = Point::in_block(b.clone(), o("w2^2"), 0);
        let orb = point_orbit(&t, &base).unwrap();
        assert_eq!(orb.enumerate(5), alloc::vec![o("0"), o("w2^1"), o("w2^1*2")]);
        // non-base point: o_B plus the part of o(α) above ζ
        let p = Point::in_block(b, o("w2^2"), 1);
        let q = point_orbit(&t, &p).unwrap();
        for e in q.enumerate(8) {
            assert!(e < o("w2^2"));
        }
    }

    #[test]
    fn o_star_below_pi() {
        let t = example_tree();
        let pts = [
            Point::s(o("w2^1*w1^1 + w^1"), 0),
            Point::in_block(BlockId::pair(o("w2^1"), o("2")), o("w2^1*4 + 17"), 0),
        ];
        for x in pts {
            let orb = point_orbit(&t, &x).unwrap();
            for e in orb.enumerate(16) {
                assert!(&e < x.pi());
            }
        }
    }

    #[test]
    fn isolation_clauses() {
        let lambda = Interval::new(o("0"), o("w2^2")).unwrap();
        // strict inequality on the bottom
        let x = Point::s(o("0"), 0);
        let y = Point::s(o("w2^2"), 0);
        assert!(!isolates(&lambda, &x, &y));
        // same block, genuine isolation
        let x = Point::s(o("1"), 0);
        assert!(isolates(&lambda, &x, &y));
        // different blocks compare against π₋(y)
        let yb = Point::in_block(BlockId::pair(o("w2^1"), o("0")), o("w2^1*5"), 0);
        assert!(!isolates(&lambda, &x, &yb));
        let small = Interval::new(o("0"), o("w2^1")).unwrap();
        assert!(isolates(&small, &x, &yb));
    }

    #[test]
    fn isolating_interval_enumeration() {
        let t = example_tree();
        // π(x) = 0 never has isolating intervals
        let x = Point::s(o("0"), 0);
        let y = Point::s(o("w2^2"), 0);
        assert!(isolating_intervals(&t, &x, &y).unwrap().is_empty());
        // the worked pair: π(x) = 1, π(y) = ω₂·ω₂
        let x = Point::s(o("1"), 0);
        let got = isolating_intervals(&t, &x, &y).unwrap();
        assert_eq!(
            got,
            alloc::vec![
                Interval::new(o("0"), o("w2^2")).unwrap(),
                Interval::new(o("0"), o("w2^1")).unwrap(),
            ]
        );
        // same block with π(y) = π(x) + 1 filters everything
        let y1 = Point::s(o("2"), 0);
        assert!(isolating_intervals(&t, &x, &y1).unwrap().is_empty());
    }
}
