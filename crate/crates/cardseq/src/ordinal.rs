//! Symbolic ordinals below κ⁺⁺ with arithmetic, cofinality and canonical
//! fundamental sequences.
//!
//! An ordinal is a finite sum of monomials `(κ⁺)^e2 · κ^e1 · ω^e0 · coeff`
//! with exponent triples strictly decreasing lexicographically. Since
//! `ω^(ω₂·e2 + ω₁·e1 + e0) = (κ⁺)^e2·κ^e1·ω^e0` under the canonical reading
//! κ = ω₁, κ⁺ = ω₂, this is exactly base-ω Cantor normal form with exponents
//! restricted to the polynomial class, so the usual CNF algorithms apply.
//! Ordinals outside the class are a parse-time error.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;

/// The three symbolic atoms `ω < κ < κ⁺` (canonically ω, ω₁, ω₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum CardinalAtom {
    /// ω
    Omega,
    /// κ, regular and uncountable; canonically ω₁.
    Kappa,
    /// κ⁺; canonically ω₂.
    KappaPlus,
}

impl CardinalAtom {
    /// The atom as an ordinal value.
    pub fn as_ordinal(self) -> Ordinal {
        match self {
            CardinalAtom::Omega => Ordinal::omega(),
            CardinalAtom::Kappa => Ordinal::kappa(),
            CardinalAtom::KappaPlus => Ordinal::kappa_plus(),
        }
    }
}

impl fmt::Display for CardinalAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalAtom::Omega => write!(f, "w"),
            CardinalAtom::Kappa => write!(f, "w1"),
            CardinalAtom::KappaPlus => write!(f, "w2"),
        }
    }
}

/// Exponent triple `(e2, e1, e0)` of a monomial, ordered lexicographically.
/// It stands for the CNF exponent `ω₂·e2 + ω₁·e1 + e0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exps {
    pub e2: u32,
    pub e1: u32,
    pub e0: u32,
}

impl Exps {
    pub const ZERO: Exps = Exps { e2: 0, e1: 0, e0: 0 };

    pub fn is_zero(self) -> bool {
        self == Exps::ZERO
    }

    /// Ordinal sum of CNF exponents: the higher components of `self` survive
    /// only above the leading component of `rhs`.
    pub fn exp_add(self, rhs: Exps) -> Exps {
        if rhs.e2 > 0 {
            Exps { e2: self.e2 + rhs.e2, e1: rhs.e1, e0: rhs.e0 }
        } else if rhs.e1 > 0 {
            Exps { e2: self.e2, e1: self.e1 + rhs.e1, e0: rhs.e0 }
        } else {
            Exps { e2: self.e2, e1: self.e1, e0: self.e0 + rhs.e0 }
        }
    }

    /// Inverse of [`Exps::exp_add`]: the unique `g` with
    /// `step.exp_add(g) == self`, or `None` when `self < step`.
    pub fn exp_sub(self, step: Exps) -> Option<Exps> {
        if self < step {
            return None;
        }
        if self.e2 > step.e2 {
            Some(Exps { e2: self.e2 - step.e2, e1: self.e1, e0: self.e0 })
        } else if self.e1 > step.e1 {
            Some(Exps { e2: 0, e1: self.e1 - step.e1, e0: self.e0 })
        } else {
            Some(Exps { e2: 0, e1: 0, e0: self.e0 - step.e0 })
        }
    }
}

/// One CNF monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Exps,
    /// Always ≥ 1.
    pub coeff: u64,
}

/// Cofinality of an ordinal in the representable class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cofinality {
    /// cf(0); only for the ordinal zero.
    Zero,
    /// A successor ordinal.
    Successor,
    /// A limit ordinal with cofinality ω, κ or κ⁺.
    Cof(CardinalAtom),
}

impl Cofinality {
    pub fn is_at_least_kappa(self) -> bool {
        matches!(self, Cofinality::Cof(CardinalAtom::Kappa) | Cofinality::Cof(CardinalAtom::KappaPlus))
    }
}

impl fmt::Display for Cofinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cofinality::Zero => write!(f, "0"),
            Cofinality::Successor => write!(f, "succ"),
            Cofinality::Cof(a) => write!(f, "{a}"),
        }
    }
}

/// An ordinal below κ⁺⁺ in the polynomial Cantor-normal-form class.
///
/// Immutable; all operations are pure and return fresh values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    monomials: Vec<Monomial>,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { monomials: Vec::new() }
    }

    pub fn one() -> Ordinal {
        Ordinal::from_nat(1)
    }

    pub fn from_nat(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { monomials: vec![Monomial { exps: Exps::ZERO, coeff: n }] }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal::monomial(0, 0, 1, 1)
    }

    pub fn kappa() -> Ordinal {
        Ordinal::monomial(0, 1, 0, 1)
    }

    pub fn kappa_plus() -> Ordinal {
        Ordinal::monomial(1, 0, 0, 1)
    }

    /// Single-monomial constructor `(κ⁺)^e2·κ^e1·ω^e0·coeff`; zero if `coeff == 0`.
    pub fn monomial(e2: u32, e1: u32, e0: u32, coeff: u64) -> Ordinal {
        if coeff == 0 {
            return Ordinal::zero();
        }
        Ordinal { monomials: vec![Monomial { exps: Exps { e2, e1, e0 }, coeff }] }
    }

    /// Builds from raw monomials, checking the normal-form invariants.
    pub fn from_monomials(monomials: Vec<Monomial>) -> Result<Ordinal, Error> {
        for w in monomials.windows(2) {
            if w[0].exps <= w[1].exps {
                return Err(Error::Parse("exponents not strictly decreasing".to_string()));
            }
        }
        if monomials.iter().any(|m| m.coeff == 0) {
            return Err(Error::Parse("zero coefficient".to_string()));
        }
        Ok(Ordinal { monomials })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// True for successor ordinals (the last monomial is finite).
    pub fn is_successor(&self) -> bool {
        self.monomials.last().map_or(false, |m| m.exps.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.monomials.last().map_or(false, |m| !m.exps.is_zero())
    }

    /// True below κ⁺ (every exponent has `e2 == 0`), i.e. admissible as a
    /// block index η or a ladder index into a κ⁺-enumeration.
    pub fn below_kappa_plus(&self) -> bool {
        self.monomials.iter().all(|m| m.exps.e2 == 0)
    }

    /// True below κ (only ω-exponents).
    pub fn below_kappa(&self) -> bool {
        self.monomials.iter().all(|m| m.exps.e2 == 0 && m.exps.e1 == 0)
    }

    /// The natural-number value, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.monomials.len() {
            0 => Some(0),
            1 if self.monomials[0].exps.is_zero() => Some(self.monomials[0].coeff),
            _ => None,
        }
    }

    /// Ordinal addition in normal form; monomials of `self` dominated by the
    /// leading monomial of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.monomials.first() else {
            return self.clone();
        };
        let mut out: Vec<Monomial> = self
            .monomials
            .iter()
            .take_while(|m| m.exps > lead.exps)
            .copied()
            .collect();
        let mut rest = rhs.monomials.clone();
        if let Some(m) = self.monomials.get(out.len()) {
            if m.exps == lead.exps {
                rest[0].coeff += m.coeff;
            }
        }
        out.extend(rest);
        Ordinal { monomials: out }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Left subtraction: the unique `x` with `z + x = self`.
    pub fn sub_left(&self, z: &Ordinal) -> Result<Ordinal, Error> {
        let d = &self.monomials;
        let zs = &z.monomials;
        let mut i = 0;
        loop {
            if i == zs.len() {
                return Ok(Ordinal { monomials: d[i..].to_vec() });
            }
            if i == d.len() {
                return Err(Error::Underflow);
            }
            let (dm, zm) = (d[i], zs[i]);
            if dm == zm {
                i += 1;
                continue;
            }
            return match zm.exps.cmp(&dm.exps) {
                Ordering::Equal if zm.coeff < dm.coeff => {
                    let mut out = vec![Monomial { exps: dm.exps, coeff: dm.coeff - zm.coeff }];
                    out.extend_from_slice(&d[i + 1..]);
                    Ok(Ordinal { monomials: out })
                }
                Ordering::Less => Ok(Ordinal { monomials: d[i..].to_vec() }),
                _ => Err(Error::Underflow),
            };
        }
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        let last = self.monomials.last()?;
        if !last.exps.is_zero() {
            return None;
        }
        let mut monomials = self.monomials.clone();
        if last.coeff == 1 {
            monomials.pop();
        } else {
            monomials.last_mut().unwrap().coeff -= 1;
        }
        Some(Ordinal { monomials })
    }

    /// Predecessor for successors, identity for limits and zero. This is the
    /// shift needed when composing `1 + x = self` style index arithmetic.
    pub fn pred_or_self(&self) -> Ordinal {
        self.pred().unwrap_or_else(|| self.clone())
    }

    /// Cofinality, read off the last monomial: finite tail means successor,
    /// otherwise the smallest nonzero exponent position decides.
    pub fn cofinality(&self) -> Cofinality {
        match self.monomials.last() {
            None => Cofinality::Zero,
            Some(m) if m.exps.is_zero() => Cofinality::Successor,
            Some(m) => {
                if m.exps.e0 > 0 {
                    Cofinality::Cof(CardinalAtom::Omega)
                } else if m.exps.e1 > 0 {
                    Cofinality::Cof(CardinalAtom::Kappa)
                } else {
                    Cofinality::Cof(CardinalAtom::KappaPlus)
                }
            }
        }
    }

    /// The canonical fundamental sequence of a limit ordinal, obtained by
    /// peeling one copy off the last monomial.
    pub fn ladder(&self) -> Result<Ladder, Error> {
        let Some(&last) = self.monomials.last() else {
            return Err(Error::NotLimit);
        };
        if last.exps.is_zero() {
            return Err(Error::NotLimit);
        }
        let mut pre = self.monomials.clone();
        pre.pop();
        if last.coeff > 1 {
            pre.push(Monomial { exps: last.exps, coeff: last.coeff - 1 });
        }
        let e = last.exps;
        let (step, length) = if e.e0 > 0 {
            (Exps { e2: e.e2, e1: e.e1, e0: e.e0 - 1 }, CardinalAtom::Omega)
        } else if e.e1 > 0 {
            (Exps { e2: e.e2, e1: e.e1 - 1, e0: 0 }, CardinalAtom::Kappa)
        } else {
            (Exps { e2: e.e2 - 1, e1: 0, e0: 0 }, CardinalAtom::KappaPlus)
        };
        Ok(Ladder { base: Ordinal { monomials: pre }, step, length, sup: self.clone() })
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.monomials.iter().zip(other.monomials.iter()) {
            match a.exps.cmp(&b.exps).then(a.coeff.cmp(&b.coeff)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.monomials.len().cmp(&other.monomials.len())
    }
}

/// Canonical fundamental sequence `ν ↦ base + ω^step · ν` of a limit ordinal,
/// with exact inverse lookup. Strictly increasing, continuous, and cofinal in
/// its supremum; the index set has order type `length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    base: Ordinal,
    step: Exps,
    length: CardinalAtom,
    sup: Ordinal,
}

impl Ladder {
    /// Order type of the index set; equals the cofinality of the supremum.
    pub fn length(&self) -> CardinalAtom {
        self.length
    }

    pub fn sup(&self) -> &Ordinal {
        &self.sup
    }

    pub fn base(&self) -> &Ordinal {
        &self.base
    }

    /// `ω^step · nu`, monomial by monomial.
    fn scale(&self, nu: &Ordinal) -> Ordinal {
        let monomials = nu
            .monomials()
            .iter()
            .map(|m| Monomial { exps: self.step.exp_add(m.exps), coeff: m.coeff })
            .collect();
        Ordinal { monomials }
    }

    /// The `nu`-th ladder element; `nu` must be below the index order type.
    pub fn value(&self, nu: &Ordinal) -> Result<Ordinal, Error> {
        if !self.index_in_range(nu) {
            return Err(Error::IndexRange);
        }
        Ok(self.base.add(&self.scale(nu)))
    }

    pub fn index_in_range(&self, nu: &Ordinal) -> bool {
        nu < &self.length.as_ordinal()
    }

    /// Greatest `m` with `value(m) <= x`, or `None` when `x < base`.
    /// The second component is true when `value(m) == x` exactly.
    pub fn floor_index(&self, x: &Ordinal) -> Option<(Ordinal, bool)> {
        let v = x.sub_left(&self.base).ok()?;
        let mut q = Vec::new();
        let mut exact = true;
        for m in v.monomials() {
            match m.exps.exp_sub(self.step) {
                Some(g) => q.push(Monomial { exps: g, coeff: m.coeff }),
                None => {
                    exact = false;
                    break;
                }
            }
        }
        Some((Ordinal { monomials: q }, exact))
    }

    /// Exact inverse: the index `nu` with `value(nu) == x`.
    pub fn index_of(&self, x: &Ordinal) -> Option<Ordinal> {
        match self.floor_index(x) {
            Some((q, true)) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |parts: &mut Vec<String>, name: &str, e: u32| {
            if e == 1 {
                parts.push(String::from(name));
            } else if e > 1 {
                parts.push(alloc::format!("{name}^{e}"));
            }
        };
        let mut parts: Vec<String> = Vec::new();
        atom(&mut parts, "w2", self.exps.e2);
        atom(&mut parts, "w1", self.exps.e1);
        atom(&mut parts, "w", self.exps.e0);
        if self.coeff != 1 || parts.is_empty() {
            parts.push(alloc::format!("{}", self.coeff));
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn parse_monomial(s: &str) -> Result<Monomial, Error> {
    let mut exps = Exps::ZERO;
    let mut coeff: Option<u64> = None;
    let mut seen = [false; 3];
    for tok in s.split('*') {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(Error::Parse(alloc::format!("empty factor in {s:?}")));
        }
        let (atom, rest) = if let Some(r) = tok.strip_prefix("w2") {
            (Some(2usize), r)
        } else if let Some(r) = tok.strip_prefix("w1") {
            (Some(1), r)
        } else if let Some(r) = tok.strip_prefix('w') {
            (Some(0), r)
        } else {
            (None, tok)
        };
        match atom {
            Some(idx) => {
                if seen[idx] {
                    return Err(Error::Parse(alloc::format!("repeated atom in {s:?}")));
                }
                seen[idx] = true;
                let e: u32 = if rest.is_empty() {
                    1
                } else if let Some(num) = rest.strip_prefix('^') {
                    num.parse().map_err(|_| Error::Parse(alloc::format!("bad exponent {tok:?}")))?
                } else {
                    return Err(Error::Parse(alloc::format!("bad factor {tok:?}")));
                };
                if e == 0 {
                    return Err(Error::Parse(alloc::format!("zero exponent in {tok:?}")));
                }
                match idx {
                    2 => exps.e2 = e,
                    1 => exps.e1 = e,
                    _ => exps.e0 = e,
                }
            }
            None => {
                if coeff.is_some() {
                    return Err(Error::Parse(alloc::format!("repeated coefficient in {s:?}")));
                }
                let c: u64 =
                    rest.parse().map_err(|_| Error::Parse(alloc::format!("bad factor {tok:?}")))?;
                coeff = Some(c);
            }
        }
    }
    let coeff = coeff.unwrap_or(1);
    if coeff == 0 {
        return Err(Error::Parse(alloc::format!("zero coefficient in {s:?}")));
    }
    Ok(Monomial { exps, coeff })
}

impl FromStr for Ordinal {
    type Err = Error;

    /// Parses the canonical text syntax, e.g. `"w2^1*w1^1*3 + w^2 + 4"`.
    /// The monomials must already be in normal form.
    fn from_str(s: &str) -> Result<Ordinal, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Ordinal::zero());
        }
        let monomials = s
            .split('+')
            .map(|part| parse_monomial(part.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ordinal::from_monomials(monomials)
    }
}

impl serde::Serialize for Ordinal {
    /// JSON encoding: array of `[e2, e1, e0, coeff]` monomials.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.monomials.len()))?;
        for m in &self.monomials {
            seq.serialize_element(&(m.exps.e2, m.exps.e1, m.exps.e0, m.coeff))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    /// Accepts the monomial-array encoding and, for convenience, the text
    /// syntax as a JSON string.
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Ordinal, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = Ordinal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an ordinal as [[e2,e1,e0,coeff],...] or a text literal")
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Ordinal, E> {
                s.parse().map_err(|e| E::custom(alloc::format!("{e}")))
            }

            fn visit_seq<A: serde::de::SeqAccess<'de>>(self, mut seq: A) -> Result<Ordinal, A::Error> {
                let mut monomials = Vec::new();
                while let Some((e2, e1, e0, coeff)) = seq.next_element::<(u32, u32, u32, u64)>()? {
                    monomials.push(Monomial { exps: Exps { e2, e1, e0 }, coeff });
                }
                Ordinal::from_monomials(monomials)
                    .map_err(|e| serde::de::Error::custom(alloc::format!("{e}")))
            }
        }
        deserializer.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn add_identities() {
        let x = o("w2^1*w1^1 + w^2 + 4");
        assert_eq!(Ordinal::zero().add(&x), x);
        assert_eq!(x.add(&Ordinal::zero()), x);
    }

    #[test]
    fn add_merges_and_absorbs() {
        // κ⁺·κ + κ⁺ = κ⁺·(κ+1)
        let a = o("w2^1*w1^1");
        let b = o("w2^1");
        assert_eq!(a.add(&b), o("w2^1*w1^1 + w2^1"));
        // κ⁺·κ + κ⁺·κ⁺ = κ⁺·κ⁺ (left absorption)
        let c = o("w2^2");
        assert_eq!(a.add(&c), c);
        // merge equal exponents
        assert_eq!(o("w^1*2").add(&o("w^1*3")), o("w^1*5"));
    }

    #[test]
    fn sub_left_round_trips() {
        let pairs = [
            ("w2^2 + 1", "w2^1*w1^1"),
            ("w2^2 + 1", "0"),
            ("w2^1*w1^1*3 + w^2 + 4", "w2^1*w1^1*2"),
            ("w1^1*2", "w1^1"),
            ("w^3", "w^2*5 + 7"),
        ];
        for (d, z) in pairs {
            let (d, z) = (o(d), o(z));
            let x = d.sub_left(&z).unwrap();
            assert_eq!(z.add(&x), d, "{z} + {x} != {d}");
        }
        // x - x = 0
        let x = o("w2^1 + w1^1 + 3");
        assert_eq!(x.sub_left(&x).unwrap(), Ordinal::zero());
        // (κ⁺·κ⁺+1) − κ⁺·κ = κ⁺·κ⁺+1
        assert_eq!(o("w2^2 + 1").sub_left(&o("w2^1*w1^1")).unwrap(), o("w2^2 + 1"));
        assert!(o("w1^1").sub_left(&o("w2^1")).is_err());
    }

    #[test]
    fn compare_examples() {
        assert!(o("w1^1") < o("w2^1"));
        assert!(o("w2^1*w1^1") < o("w2^1*w1^1 + 1"));
        // κ⁺·κ·2 > κ⁺·(κ+1) = κ⁺·κ + κ⁺
        assert!(o("w2^1*w1^1*2") > o("w2^1*w1^1 + w2^1"));
        assert!(o("w^1") < o("w1^1"));
    }

    #[test]
    fn cofinality_rules() {
        assert_eq!(o("w2^2").cofinality(), Cofinality::Cof(CardinalAtom::KappaPlus));
        assert_eq!(o("w2^1*w1^1 + w^1").cofinality(), Cofinality::Cof(CardinalAtom::Omega));
        assert_eq!(o("5").cofinality(), Cofinality::Successor);
        assert_eq!(Ordinal::zero().cofinality(), Cofinality::Zero);
        assert_eq!(o("w2^1*w1^1").cofinality(), Cofinality::Cof(CardinalAtom::Kappa));
    }

    #[test]
    fn ladder_examples() {
        // ladder(κ⁺·κ⁺)(ξ) = κ⁺·ξ
        let l = o("w2^2").ladder().unwrap();
        assert_eq!(l.value(&o("5")).unwrap(), o("w2^1*5"));
        assert_eq!(l.value(&o("w1^1")).unwrap(), o("w2^1*w1^1"));
        assert_eq!(l.length(), CardinalAtom::KappaPlus);
        // ladder(κ)(ν) = ν
        let l = Ordinal::kappa().ladder().unwrap();
        assert_eq!(l.value(&o("w^1 + 3")).unwrap(), o("w^1 + 3"));
        assert!(l.value(&Ordinal::kappa()).is_err());
        // ladder(γ + M·X): peels the last monomial
        let l = o("w2^1*w1^2*3").ladder().unwrap();
        assert_eq!(l.value(&o("7")).unwrap(), o("w2^1*w1^2*2 + w2^1*w1^1*7"));
    }

    #[test]
    fn ladder_inverse() {
        let l = o("w2^2").ladder().unwrap();
        for nu in ["0", "1", "w^1", "w1^1*2 + 3"] {
            let nu = o(nu);
            let v = l.value(&nu).unwrap();
            assert_eq!(l.index_of(&v), Some(nu));
        }
        assert_eq!(l.index_of(&o("w2^1 + 1")), None);
        assert_eq!(l.floor_index(&o("w2^1 + 1")), Some((o("1"), false)));
    }

    #[test]
    fn parse_print_round_trip() {
        // canonical strings: printing omits exponent 1
        for s in ["0", "4", "w^2", "w2*w1*3 + w^2 + 4", "w1^3*2 + w1 + w*9 + 12"] {
            let x = o(s);
            assert_eq!(format!("{x}"), s);
            assert_eq!(o(&format!("{x}")), x);
        }
        // explicit ^1 also parses
        assert_eq!(o("w2^1*w1^1*3 + w^2 + 4"), o("w2*w1*3 + w^2 + 4"));
        // parse ∘ print is the identity everywhere
        for s in ["w2^2 + w2*w1*2 + w1^2*7 + w + 1", "w2*5"] {
            let x = o(s);
            assert_eq!(o(&format!("{x}")), x);
        }
        // non-normal input is a parse error
        assert!("1 + w^1".parse::<Ordinal>().is_err());
        assert!("w^1 + w^1".parse::<Ordinal>().is_err());
        assert!("w^0".parse::<Ordinal>().is_err());
    }

    #[test]
    fn pred_and_succ() {
        assert_eq!(o("w^1 + 1").pred(), Some(o("w^1")));
        assert_eq!(o("w^1").pred(), None);
        assert_eq!(o("3").succ(), o("4"));
        assert_eq!(o("w2^1").pred_or_self(), o("w2^1"));
    }
}
