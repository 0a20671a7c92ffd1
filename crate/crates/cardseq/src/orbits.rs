//! Symbolic ordinal sets and the basic / extended orbit functions.
//!
//! An [`OrdinalSet`] is an intensional descriptor: a finite union of finite
//! sets and segments of interval `E`-sets, possibly cut below a value, below
//! an enumeration index, and above a value. Membership and ordered
//! enumeration are exact; extensional equality of arbitrary descriptors is
//! deliberately not offered (the constructions only ever need membership and
//! unions).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::intervals::{EOrderType, ESet, Interval, IntervalTree};
use crate::ordinal::{CardinalAtom, Ordinal};

/// Upper cut of a segment piece.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SegBound {
    /// The whole `E`-set.
    All,
    /// Elements strictly below a value.
    ValueBelow(Ordinal),
    /// Elements with enumeration index strictly below a value.
    IndexBelow(Ordinal),
}

/// One primitive piece of an [`OrdinalSet`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Piece {
    /// An explicit finite set, sorted and deduplicated.
    Fin(Vec<Ordinal>),
    /// A segment of `E(interval)`: elements `>= lo` (when given) subject to
    /// the upper bound.
    Seg { interval: Interval, lo: Option<Ordinal>, hi: SegBound },
}

impl Piece {
    fn first_at_least(&self, b: &Ordinal) -> Option<Ordinal> {
        match self {
            Piece::Fin(xs) => xs.iter().find(|x| *x >= b).cloned(),
            Piece::Seg { interval, lo, hi } => {
                let eset = ESet::of(interval);
                let b = match lo {
                    Some(lo) if lo > b => lo.clone(),
                    _ => b.clone(),
                };
                let pos = if &b <= interval.bot() {
                    Ordinal::zero()
                } else {
                    let floor = eset.floor_position(&b);
                    match eset.index(&floor) {
                        Ok(v) if v == b => floor,
                        _ => floor.succ(),
                    }
                };
                let value = eset.index(&pos).ok()?;
                match hi {
                    SegBound::All => Some(value),
                    SegBound::ValueBelow(v) => (&value < v).then_some(value),
                    SegBound::IndexBelow(i) => (&pos < i).then_some(value),
                }
            }
        }
    }

    fn member(&self, x: &Ordinal) -> bool {
        match self {
            Piece::Fin(xs) => xs.binary_search(x).is_ok(),
            Piece::Seg { interval, lo, hi } => {
                if let Some(lo) = lo {
                    if x < lo {
                        return false;
                    }
                }
                let eset = ESet::of(interval);
                let Some(pos) = eset.position(x) else {
                    return false;
                };
                match hi {
                    SegBound::All => true,
                    SegBound::ValueBelow(v) => x < v,
                    SegBound::IndexBelow(i) => &pos < i,
                }
            }
        }
    }

    /// First `k` elements of the piece, in increasing order.
    fn take(&self, k: usize) -> Vec<Ordinal> {
        match self {
            Piece::Fin(xs) => xs.iter().take(k).cloned().collect(),
            Piece::Seg { .. } => {
                let mut out = Vec::new();
                let mut next_bound = Ordinal::zero();
                while out.len() < k {
                    match self.first_at_least(&next_bound) {
                        Some(v) => {
                            next_bound = v.succ();
                            out.push(v);
                        }
                        None => break,
                    }
                }
                out
            }
        }
    }

    /// Structural bound: the piece denotes a set of cardinality at most κ.
    fn card_at_most_kappa(&self) -> bool {
        match self {
            Piece::Fin(_) => true,
            Piece::Seg { interval, hi, .. } => match ESet::of(interval).order_type() {
                EOrderType::Finite(_) => true,
                EOrderType::Atom(CardinalAtom::Omega) | EOrderType::Atom(CardinalAtom::Kappa) => true,
                EOrderType::Atom(CardinalAtom::KappaPlus) => match hi {
                    SegBound::All => false,
                    SegBound::ValueBelow(v) => v < interval.top(),
                    SegBound::IndexBelow(i) => i.below_kappa_plus(),
                },
            },
        }
    }
}

/// A finite union of [`Piece`]s with decidable membership.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct OrdinalSet {
    pieces: Vec<Piece>,
}

impl OrdinalSet {
    pub fn empty() -> OrdinalSet {
        OrdinalSet { pieces: Vec::new() }
    }

    pub fn fin(mut xs: Vec<Ordinal>) -> OrdinalSet {
        xs.sort();
        xs.dedup();
        if xs.is_empty() {
            OrdinalSet::empty()
        } else {
            OrdinalSet { pieces: vec![Piece::Fin(xs)] }
        }
    }

    pub fn seg(interval: Interval, lo: Option<Ordinal>, hi: SegBound) -> OrdinalSet {
        OrdinalSet { pieces: vec![Piece::Seg { interval, lo, hi }] }
    }

    /// The full `E(interval)` as a set.
    pub fn e_set(interval: Interval) -> OrdinalSet {
        OrdinalSet::seg(interval, None, SegBound::All)
    }

    pub fn union(mut self, other: OrdinalSet) -> OrdinalSet {
        self.pieces.extend(other.pieces);
        self
    }

    /// The set restricted to elements `>= lo` (used for `o(α) \ ζ`).
    pub fn cut_below(self, lo: &Ordinal) -> OrdinalSet {
        let pieces = self
            .pieces
            .into_iter()
            .filter_map(|p| match p {
                Piece::Fin(xs) => {
                    let xs: Vec<Ordinal> = xs.into_iter().filter(|x| x >= lo).collect();
                    (!xs.is_empty()).then_some(Piece::Fin(xs))
                }
                Piece::Seg { interval, lo: old, hi } => {
                    let new_lo = match old {
                        Some(old) if &old >= lo => old,
                        _ => lo.clone(),
                    };
                    Some(Piece::Seg { interval, lo: Some(new_lo), hi })
                }
            })
            .collect();
        OrdinalSet { pieces }
    }

    pub fn member(&self, x: &Ordinal) -> bool {
        self.pieces.iter().any(|p| p.member(x))
    }

    /// The `k` least elements.
    pub fn enumerate(&self, k: usize) -> Vec<Ordinal> {
        let mut all: Vec<Ordinal> = self.pieces.iter().flat_map(|p| p.take(k)).collect();
        all.sort();
        all.dedup();
        all.truncate(k);
        all
    }

    /// Least element `>= b`, if any.
    pub fn first_at_least(&self, b: &Ordinal) -> Option<Ordinal> {
        self.pieces.iter().filter_map(|p| p.first_at_least(b)).min()
    }

    pub fn is_empty(&self) -> bool {
        self.first_at_least(&Ordinal::zero()).is_none()
    }

    /// Structural witness for the `|·| <= κ` cardinality claims.
    pub fn card_at_most_kappa(&self) -> bool {
        self.pieces.iter().all(|p| p.card_at_most_kappa())
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }
}

/// Basic orbit `o(ζ) = ⋃ { E(I(ζ,m)) ∩ ζ : m < n(ζ) }`.
pub fn basic_orbit(tree: &IntervalTree, zeta: &Ordinal) -> Result<OrdinalSet, Error> {
    let n = tree.first_level(zeta)?;
    let mut set = OrdinalSet::empty();
    for m in 0..n {
        let interval = tree.locate(zeta, m)?;
        set = set.union(OrdinalSet::seg(interval, None, SegBound::ValueBelow(zeta.clone())));
    }
    debug_assert!(set.card_at_most_kappa());
    Ok(set)
}

/// Extended orbit `ō(ζ) = o(ζ) ∪ (E(J(ζ)) ∩ ζ)`, for `cf(ζ) >= κ`.
pub fn extended_orbit(tree: &IntervalTree, zeta: &Ordinal) -> Result<OrdinalSet, Error> {
    if !zeta.cofinality().is_at_least_kappa() {
        return Err(Error::CofTooSmall);
    }
    let basic = basic_orbit(tree, zeta)?;
    let (_, big_j) = tree.limit_interval(zeta)?;
    Ok(basic.union(OrdinalSet::seg(big_j, None, SegBound::ValueBelow(zeta.clone()))))
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
    fn orbit_of_zero_is_empty() {
        let t = example_tree();
        assert!(basic_orbit(&t, &o("0")).unwrap().is_empty());
    }

    #[test]
    fn example_orbits() {
        let t = example_tree();
        // o(ω₂·ω₂) = {0}
        let s = basic_orbit(&t, &o("w2^2")).unwrap();
        assert_eq!(s.enumerate(4), vec![o("0")]);
        // ō(ω₂·ω₂) = {ω₂·ξ : ξ < ω₂}
        let s = extended_orbit(&t, &o("w2^2")).unwrap();
        assert_eq!(s.enumerate(3), vec![o("0"), o("w2^1"), o("w2^1*2")]);
        assert!(s.member(&o("w2^1*5")));
        assert!(s.member(&o("w2^1*w1^1")));
        assert!(!s.member(&o("w2^1*5 + 3")));
        assert!(!s.member(&o("w2^2")));
        // o(ω₂·ω₁) = ō(ω₂·ω₁) = {ω₂·ξ : ξ < ω₁}
        let base = basic_orbit(&t, &o("w2^1*w1^1")).unwrap();
        let ext = extended_orbit(&t, &o("w2^1*w1^1")).unwrap();
        for x in ["0", "w2^1", "w2^1*9", "w2^1*w^1"] {
            assert!(base.member(&o(x)), "{x} in basic orbit");
            assert!(ext.member(&o(x)));
        }
        for x in ["w2^1*w1^1", "w2^1*w1^1 + w2^1", "1"] {
            assert!(!base.member(&o(x)), "{x} not in basic orbit");
            assert!(!ext.member(&o(x)));
        }
    }

    #[test]
    fn extended_orbit_requires_cofinality() {
        let t = example_tree();
        assert_eq!(extended_orbit(&t, &o("w2^1*w^1")), Err(Error::CofTooSmall));
    }

    #[test]
    fn membership_on_trivial_sets() {
        assert!(!OrdinalSet::empty().member(&o("0")));
        let s = OrdinalSet::fin(vec![o("0")]);
        assert!(s.member(&o("0")));
        assert!(!s.member(&o("1")));
    }

    #[test]
    fn extended_contains_basic_and_stays_below() {
        let t = example_tree();
        for z in ["w2^2", "w2^1*w1^1", "w2^1*w1^2", "w2^1*w1^1*2"] {
            let z = o(z);
            let b = basic_orbit(&t, &z).unwrap();
            let e = extended_orbit(&t, &z).unwrap();
            for x in b.enumerate(12) {
                assert!(e.member(&x), "extended misses {x} for {z}");
                assert!(x < z);
            }
            for x in e.enumerate(12) {
                assert!(x < z);
            }
        }
    }

    #[test]
    fn cofinality_witness() {
        // for sampled x < ζ some enumerated orbit element is >= x
        let t = example_tree();
        let z = o("w2^2");
        let e = extended_orbit(&t, &z).unwrap();
        for x in ["w2^1*w1^1", "w2^1*w^2", "w2^1*17 + 4"] {
            let x = o(x);
            let w = e.first_at_least(&x);
            assert!(w.is_some() && w.unwrap() < z, "no orbit element above {x}");
        }
    }

    #[test]
    fn first_at_least_and_cuts() {
        let t = example_tree();
        let e = extended_orbit(&t, &o("w2^2")).unwrap();
        assert_eq!(e.first_at_least(&o("w2^1*2 + 5")), Some(o("w2^1*3")));
        assert_eq!(e.first_at_least(&o("w2^1*w1^1")), Some(o("w2^1*w1^1")));
        let cut = e.cut_below(&o("w2^1*4"));
        assert!(!cut.member(&o("w2^1*3")));
        assert!(cut.member(&o("w2^1*4")));
        assert_eq!(cut.enumerate(2), vec![o("w2^1*4"), o("w2^1*5")]);
    }

    #[test]
    fn cardinality_structure() {
        let t = example_tree();
        assert!(basic_orbit(&t, &o("w2^1*w1^1")).unwrap().card_at_most_kappa());
        // the extended orbit of a κ⁺-cofinal ordinal genuinely has size κ⁺
        assert!(!extended_orbit(&t, &o("w2^2")).unwrap().card_at_most_kappa());
    }
}
