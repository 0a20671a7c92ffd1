//! The interval tree over `[0,δ)`: levels ℐₙ, the containing interval
//! `I(α,n)`, the first splitting level `n(α)`, and the limit interval
//! `(j(ζ), J(ζ))`.
//!
//! Every interval `[b,t)` carries a canonical cofinal closed subset `E(I)`:
//! `{b, t-1}` when `t` is a successor, and `{b} ∪ {x ∈ ladder(t) : x > b}`
//! when `t` is a limit. Partitioning an interval along consecutive `E`-points
//! produces the next level; singleton intervals are fixed points of
//! partitioning, which makes `locate` stabilise.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::ordinal::{CardinalAtom, Ladder, Ordinal};

/// A half-open ordinal interval `[bot, top)` with `bot < top`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    bot: Ordinal,
    top: Ordinal,
}

impl Interval {
    pub fn new(bot: Ordinal, top: Ordinal) -> Result<Interval, Error> {
        if bot >= top {
            return Err(Error::OutOfRange(format!("empty interval [{bot}, {top})")));
        }
        Ok(Interval { bot, top })
    }

    pub fn bot(&self) -> &Ordinal {
        &self.bot
    }

    pub fn top(&self) -> &Ordinal {
        &self.top
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        &self.bot <= x && x < &self.top
    }

    pub fn is_singleton(&self) -> bool {
        self.bot.succ() == self.top
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.bot, self.top)
    }
}

/// The canonical enumeration of `E(I)`.
///
/// For a limit top the enumeration is `ε_0 = bot` and `ε_ν = L(k + (ν ⊖ 1))`
/// for `ν ≥ 1`, where `L` is the canonical ladder of the top, `k` is the
/// least ladder index with `L(k) > bot`, and `1 + (ν ⊖ 1) = ν`.
#[derive(Debug, Clone)]
pub enum ESet {
    /// `top = second + 1`; `E = {bot, second}` (just `{bot}` for singletons).
    Succ { bot: Ordinal, second: Ordinal },
    /// Limit top: `E = {bot} ∪ {ladder(m) : m ≥ k}`.
    Lim { bot: Ordinal, ladder: Ladder, k: Ordinal },
}

impl ESet {
    pub fn of(interval: &Interval) -> ESet {
        let bot = interval.bot().clone();
        match interval.top().pred() {
            Some(second) => ESet::Succ { bot, second },
            None => {
                let ladder = interval.top().ladder().expect("non-successor top is a limit");
                let k = match ladder.floor_index(&bot) {
                    None => Ordinal::zero(),
                    Some((m, _)) => m.succ(),
                };
                ESet::Lim { bot, ladder, k }
            }
        }
    }

    /// Order type of the enumeration: `cf(top)` for limit tops.
    pub fn order_type(&self) -> EOrderType {
        match self {
            ESet::Succ { bot, second } => {
                if bot == second {
                    EOrderType::Finite(1)
                } else {
                    EOrderType::Finite(2)
                }
            }
            ESet::Lim { ladder, .. } => EOrderType::Atom(ladder.length()),
        }
    }

    /// `ε^I_ν`.
    pub fn index(&self, nu: &Ordinal) -> Result<Ordinal, Error> {
        match self {
            ESet::Succ { bot, second } => match nu.as_nat() {
                Some(0) => Ok(bot.clone()),
                Some(1) if second != bot => Ok(second.clone()),
                _ => Err(Error::IndexRange),
            },
            ESet::Lim { bot, ladder, k } => {
                if nu.is_zero() {
                    return Ok(bot.clone());
                }
                let j = nu.sub_left(&Ordinal::one()).expect("nu >= 1");
                ladder.value(&k.add(&j))
            }
        }
    }

    /// Exact inverse of [`ESet::index`].
    pub fn position(&self, x: &Ordinal) -> Option<Ordinal> {
        match self {
            ESet::Succ { bot, second } => {
                if x == bot {
                    Some(Ordinal::zero())
                } else if x == second {
                    Some(Ordinal::one())
                } else {
                    None
                }
            }
            ESet::Lim { bot, ladder, k } => {
                if x == bot {
                    return Some(Ordinal::zero());
                }
                let m = ladder.index_of(x)?;
                if &m < k {
                    return None;
                }
                let j = m.sub_left(k).ok()?;
                Some(Ordinal::one().add(&j))
            }
        }
    }

    /// Membership in `E(I)`.
    pub fn contains(&self, x: &Ordinal) -> bool {
        self.position(x).is_some()
    }

    /// Greatest `ν` with `ε_ν <= x`, for `x >= bot` inside the interval.
    pub fn floor_position(&self, x: &Ordinal) -> Ordinal {
        match self {
            ESet::Succ { second, .. } => {
                if x >= second && second != self.bot_ref() {
                    Ordinal::one()
                } else {
                    Ordinal::zero()
                }
            }
            ESet::Lim { ladder, k, .. } => match ladder.floor_index(x) {
                Some((m, _)) if &m >= k => {
                    let j = m.sub_left(k).expect("m >= k");
                    Ordinal::one().add(&j)
                }
                _ => Ordinal::zero(),
            },
        }
    }

    fn bot_ref(&self) -> &Ordinal {
        match self {
            ESet::Succ { bot, .. } => bot,
            ESet::Lim { bot, .. } => bot,
        }
    }
}

/// Order type marker for an `E`-set enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EOrderType {
    Finite(u8),
    Atom(CardinalAtom),
}

/// The nested interval families `ℐ₀, ℐ₁, …` over `[0, delta)`.
///
/// The tree is never materialised; `locate` performs `n` successive ladder
/// searches. `max_depth` guards the (empirically quick) stabilisation.
#[derive(Debug, Clone)]
pub struct IntervalTree {
    delta: Ordinal,
    max_depth: usize,
}

pub const DEFAULT_MAX_DEPTH: usize = 64;

impl IntervalTree {
    pub fn new(delta: Ordinal) -> Result<IntervalTree, Error> {
        if delta.is_zero() {
            return Err(Error::OutOfRange(format!("delta must be positive")));
        }
        Ok(IntervalTree { delta, max_depth: DEFAULT_MAX_DEPTH })
    }

    pub fn with_max_depth(delta: Ordinal, max_depth: usize) -> Result<IntervalTree, Error> {
        let mut t = IntervalTree::new(delta)?;
        t.max_depth = max_depth;
        Ok(t)
    }

    pub fn delta(&self) -> &Ordinal {
        &self.delta
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// The root interval `[0, δ)` of ℐ₀.
    pub fn root(&self) -> Interval {
        Interval { bot: Ordinal::zero(), top: self.delta.clone() }
    }

    /// The member of the partition of `interval` containing `alpha`.
    /// Singleton intervals partition to themselves.
    pub fn child_containing(&self, interval: &Interval, alpha: &Ordinal) -> Interval {
        debug_assert!(interval.contains(alpha));
        match ESet::of(interval) {
            ESet::Succ { bot, second } => {
                if bot == second {
                    interval.clone()
                } else if alpha < &second {
                    Interval { bot, top: second }
                } else {
                    Interval { bot: second.clone(), top: second.succ() }
                }
            }
            eset @ ESet::Lim { .. } => {
                let pos = eset.floor_position(alpha);
                let lo = eset.index(&pos).expect("floor position is valid");
                let hi = match eset.index(&pos.succ()) {
                    Ok(hi) => hi,
                    Err(_) => unreachable!("successor position stays below cf(top)"),
                };
                Interval { bot: lo, top: hi }
            }
        }
    }

    /// `I(alpha, n)`: the unique member of ℐₙ containing `alpha`.
    pub fn locate(&self, alpha: &Ordinal, n: usize) -> Result<Interval, Error> {
        if alpha >= &self.delta {
            return Err(Error::OutOfRange(format!("{alpha} not below delta = {}", self.delta)));
        }
        if n > self.max_depth {
            return Err(Error::DepthExceeded);
        }
        let mut interval = self.root();
        for _ in 0..n {
            interval = self.child_containing(&interval, alpha);
        }
        Ok(interval)
    }

    /// `n(alpha)`: least `n` such that some member of ℐₙ has `alpha` as its
    /// bottom.
    pub fn first_level(&self, alpha: &Ordinal) -> Result<usize, Error> {
        if alpha >= &self.delta {
            return Err(Error::OutOfRange(format!("{alpha} not below delta = {}", self.delta)));
        }
        let mut interval = self.root();
        for n in 0..=self.max_depth {
            if interval.bot() == alpha {
                return Ok(n);
            }
            interval = self.child_containing(&interval, alpha);
        }
        Err(Error::DepthExceeded)
    }

    /// `(j(ζ), J(ζ))` for a limit `ζ < δ`: the interval of which `ζ` is a
    /// limit point of the `E`-set. If some member of ℐ_{n(ζ)} has top `ζ`
    /// that member is `J(ζ)`; otherwise `ζ` is a limit point of
    /// `E(I(ζ, n(ζ)-1))`.
    pub fn limit_interval(&self, zeta: &Ordinal) -> Result<(usize, Interval), Error> {
        if !zeta.is_limit() {
            return Err(Error::NotLimit);
        }
        let n = self.first_level(zeta)?;
        debug_assert!(n >= 1, "limit zeta is not 0, so n(zeta) >= 1");
        let parent = self.locate(zeta, n - 1)?;
        let eset = ESet::of(&parent);
        let pos = eset
            .position(zeta)
            .expect("bot I(zeta, n) = zeta is a splitting point of the parent");
        debug_assert!(!pos.is_zero());
        if pos.is_successor() {
            let prev = eset.index(&pos.pred().expect("successor position")).expect("in range");
            Ok((n, Interval { bot: prev, top: zeta.clone() }))
        } else {
            Ok((n - 1, parent))
        }
    }

    /// `ε^I_ν` with the precondition `ν < otp(E(I))`.
    pub fn e_index(&self, interval: &Interval, nu: &Ordinal) -> Result<Ordinal, Error> {
        ESet::of(interval).index(nu)
    }

    /// Exact position of `x` in `E(I)`, when present.
    pub fn e_position(&self, interval: &Interval, x: &Ordinal) -> Option<Ordinal> {
        ESet::of(interval).position(x)
    }

    /// All distinct intervals `I(alpha, m)` for `m = 0, 1, …` until the walk
    /// stabilises at `[alpha, alpha+1)`-level granularity, paired with their
    /// levels. The scan stops once `bot = alpha` is reached.
    pub fn tower(&self, alpha: &Ordinal) -> Result<Vec<(usize, Interval)>, Error> {
        if alpha >= &self.delta {
            return Err(Error::OutOfRange(format!("{alpha} not below delta = {}", self.delta)));
        }
        let mut out = Vec::new();
        let mut interval = self.root();
        for m in 0..=self.max_depth {
            let done = interval.bot() == alpha;
            if out.last().map(|(_, i)| i != &interval).unwrap_or(true) {
                out.push((m, interval.clone()));
            }
            if done {
                return Ok(out);
            }
            interval = self.child_containing(&interval, alpha);
        }
        Err(Error::DepthExceeded)
    }

    /// Like [`IntervalTree::tower`] but descends all the way to the
    /// singleton `[alpha, alpha+1)`, so the result lists every distinct
    /// interval of the tree containing `alpha`.
    pub fn tower_full(&self, alpha: &Ordinal) -> Result<Vec<(usize, Interval)>, Error> {
        if alpha >= &self.delta {
            return Err(Error::OutOfRange(format!("{alpha} not below delta = {}", self.delta)));
        }
        let mut out: Vec<(usize, Interval)> = Vec::new();
        let mut interval = self.root();
        for m in 0..=self.max_depth {
            if out.last().map(|(_, i)| i == &interval).unwrap_or(false) {
                return Ok(out);
            }
            out.push((m, interval.clone()));
            interval = self.child_containing(&interval, alpha);
        }
        Err(Error::DepthExceeded)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn tree(delta: &str) -> IntervalTree {
        IntervalTree::new(o(delta)).unwrap()
    }

    /// δ = ω₂·ω₂ + 1, the worked tree from the source construction.
    fn example_tree() -> IntervalTree {
        tree("w2^2 + 1")
    }

    #[test]
    fn example_e_sets() {
        let t = example_tree();
        // E([0,δ)) = {0, ω₂·ω₂}
        let root = t.root();
        assert_eq!(t.e_index(&root, &o("0")).unwrap(), o("0"));
        assert_eq!(t.e_index(&root, &o("1")).unwrap(), o("w2^2"));
        assert!(t.e_index(&root, &o("2")).is_err());
        // E([0,ω₂·ω₂)) = {ω₂·ξ : ξ < ω₂}
        let i1 = Interval::new(o("0"), o("w2^2")).unwrap();
        assert_eq!(t.e_index(&i1, &o("5")).unwrap(), o("w2^1*5"));
        assert_eq!(t.e_index(&i1, &o("w1^1")).unwrap(), o("w2^1*w1^1"));
        assert_eq!(t.e_position(&i1, &o("w2^1*w1^1")), Some(o("w1^1")));
        assert_eq!(t.e_position(&i1, &o("w2^1*w1^1 + 1")), None);
        // E([ω₂·ξ, ω₂·(ξ+1))) = everything in the interval
        let i2 = Interval::new(o("w2^1*w1^1"), o("w2^1*w1^1 + w2^1")).unwrap();
        assert_eq!(t.e_index(&i2, &o("w^1 + 2")).unwrap(), o("w2^1*w1^1 + w^1 + 2"));
        // E({ζ}) = {ζ}
        let s = Interval::new(o("w2^2"), o("w2^2 + 1")).unwrap();
        assert_eq!(t.e_index(&s, &o("0")).unwrap(), o("w2^2"));
        assert!(t.e_index(&s, &o("1")).is_err());
        // ε^I_0 = bot I
        assert_eq!(t.e_index(&i2, &o("0")).unwrap(), o("w2^1*w1^1"));
    }

    #[test]
    fn example_levels() {
        let t = example_tree();
        assert_eq!(t.first_level(&o("0")).unwrap(), 0);
        assert_eq!(t.first_level(&o("w2^2")).unwrap(), 1);
        assert_eq!(t.first_level(&o("w2^1*w1^1")).unwrap(), 2);
        assert_eq!(t.first_level(&o("w2^1*w1^1 + w^1")).unwrap(), 3);
    }

    #[test]
    fn example_locate() {
        let t = example_tree();
        assert_eq!(t.locate(&o("w2^1*w1^1"), 0).unwrap(), t.root());
        assert_eq!(
            t.locate(&o("w2^1*w1^1"), 1).unwrap(),
            Interval::new(o("0"), o("w2^2")).unwrap()
        );
        assert_eq!(
            t.locate(&o("w2^1*w1^1 + w^1"), 2).unwrap(),
            Interval::new(o("w2^1*w1^1"), o("w2^1*w1^1 + w2^1")).unwrap()
        );
    }

    #[test]
    fn example_limit_intervals() {
        let t = example_tree();
        let (j, big_j) = t.limit_interval(&o("w2^2")).unwrap();
        assert_eq!(j, 1);
        assert_eq!(big_j, Interval::new(o("0"), o("w2^2")).unwrap());
        let (j, big_j) = t.limit_interval(&o("w2^1*w1^1")).unwrap();
        assert_eq!(j, 1);
        assert_eq!(big_j, Interval::new(o("0"), o("w2^2")).unwrap());
        // cf(ζ) = κ⁺ forces j(ζ) = n(ζ)
        let (j, big_j) = t.limit_interval(&o("w2^1*5")).unwrap();
        assert_eq!(j, t.first_level(&o("w2^1*5")).unwrap());
        assert_eq!(big_j.top(), &o("w2^1*5"));
    }

    #[test]
    fn nesting_and_bounds() {
        let t = example_tree();
        for a in ["0", "17", "w2^1*3 + w1^1*4 + 9", "w2^1*w1^1 + w^1", "w2^2"] {
            let a = o(a);
            for n in 0..6 {
                let outer = t.locate(&a, n).unwrap();
                let inner = t.locate(&a, n + 1).unwrap();
                assert!(outer.contains(&a));
                assert!(outer.bot() <= inner.bot() && inner.top() <= outer.top());
            }
            let n = t.first_level(&a).unwrap();
            assert_eq!(t.locate(&a, n).unwrap().bot(), &a);
        }
    }

    #[test]
    fn small_delta_trees() {
        // δ = ω: level 1 splits into singletons at every natural.
        let t = tree("w^1");
        assert_eq!(t.first_level(&o("0")).unwrap(), 0);
        assert_eq!(t.first_level(&o("7")).unwrap(), 1);
        assert_eq!(t.locate(&o("7"), 1).unwrap(), Interval::new(o("7"), o("8")).unwrap());
        // finite δ: the comb [0,n) → [0,n-1) + {n-1}
        let t = tree("5");
        assert_eq!(t.first_level(&o("4")).unwrap(), 1);
        assert_eq!(t.first_level(&o("3")).unwrap(), 2);
        assert_eq!(t.first_level(&o("0")).unwrap(), 0);
    }

    #[test]
    fn tower_stops_at_alpha() {
        let t = example_tree();
        let tower = t.tower(&o("w2^1*w1^1 + w^1")).unwrap();
        assert_eq!(tower.first().unwrap().1, t.root());
        assert_eq!(tower.last().unwrap().1.bot(), &o("w2^1*w1^1 + w^1"));
    }
}
