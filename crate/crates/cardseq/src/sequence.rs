//! Run-length cardinal sequences: `D_λ` membership, concatenation, the
//! decreasing-cardinal decomposition, level-wise unions, and selection plans
//! for carving a target sequence out of a good space.
//!
//! A sequence is stored as runs `(value, length)` with adjacent runs of
//! distinct value and positive ordinal lengths. Since every representable
//! sequence is run-length encodable, `D_λ` membership reduces to a cofinality
//! test at the starts of the λ⁺-runs: `f⁻¹(λ)` is successor-closed exactly
//! when no λ⁺-run starts at a successor, and `<λ`-closed exactly when every
//! λ⁺-run start has cofinality at least λ.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::ordinal::{CardinalAtom, Cofinality, Ordinal};

/// The regular cardinals available as sequence values: ω, ω₁ = κ, ω₂ = κ⁺,
/// and ω₃ = κ⁺⁺ (the latter only ever appears as a value λ⁺ for λ = ω₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum SymbolicCardinal {
    #[serde(rename = "w")]
    Omega,
    #[serde(rename = "w1")]
    Omega1,
    #[serde(rename = "w2")]
    Omega2,
    #[serde(rename = "w3")]
    Omega3,
}

impl SymbolicCardinal {
    pub fn successor(self) -> Option<SymbolicCardinal> {
        match self {
            SymbolicCardinal::Omega => Some(SymbolicCardinal::Omega1),
            SymbolicCardinal::Omega1 => Some(SymbolicCardinal::Omega2),
            SymbolicCardinal::Omega2 => Some(SymbolicCardinal::Omega3),
            SymbolicCardinal::Omega3 => None,
        }
    }

    /// The cofinality atom this cardinal corresponds to, when representable.
    pub fn as_atom(self) -> Option<CardinalAtom> {
        match self {
            SymbolicCardinal::Omega => Some(CardinalAtom::Omega),
            SymbolicCardinal::Omega1 => Some(CardinalAtom::Kappa),
            SymbolicCardinal::Omega2 => Some(CardinalAtom::KappaPlus),
            SymbolicCardinal::Omega3 => None,
        }
    }
}

impl fmt::Display for SymbolicCardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicCardinal::Omega => write!(f, "w"),
            SymbolicCardinal::Omega1 => write!(f, "w1"),
            SymbolicCardinal::Omega2 => write!(f, "w2"),
            SymbolicCardinal::Omega3 => write!(f, "w3"),
        }
    }
}

impl FromStr for SymbolicCardinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<SymbolicCardinal, Error> {
        match s {
            "w" => Ok(SymbolicCardinal::Omega),
            "w1" => Ok(SymbolicCardinal::Omega1),
            "w2" => Ok(SymbolicCardinal::Omega2),
            "w3" => Ok(SymbolicCardinal::Omega3),
            _ => Err(Error::Parse(format!("unknown cardinal {s:?}"))),
        }
    }
}

/// A run-length cardinal sequence.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CardinalSequence {
    runs: Vec<(SymbolicCardinal, Ordinal)>,
}

impl CardinalSequence {
    pub fn empty() -> CardinalSequence {
        CardinalSequence { runs: Vec::new() }
    }

    /// The constant sequence of the given length.
    pub fn constant(value: SymbolicCardinal, length: Ordinal) -> CardinalSequence {
        if length.is_zero() {
            CardinalSequence::empty()
        } else {
            CardinalSequence { runs: alloc::vec![(value, length)] }
        }
    }

    /// Normalising constructor: drops empty runs and merges adjacent equal
    /// values with ordinal length addition.
    pub fn from_runs(runs: Vec<(SymbolicCardinal, Ordinal)>) -> CardinalSequence {
        let mut out: Vec<(SymbolicCardinal, Ordinal)> = Vec::new();
        for (v, l) in runs {
            if l.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((pv, pl)) if *pv == v => *pl = pl.add(&l),
                _ => out.push((v, l)),
            }
        }
        CardinalSequence { runs: out }
    }

    pub fn runs(&self) -> &[(SymbolicCardinal, Ordinal)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Domain length: the ordinal sum of the run lengths.
    pub fn total(&self) -> Ordinal {
        self.runs.iter().fold(Ordinal::zero(), |acc, (_, l)| acc.add(l))
    }

    pub fn concat(&self, other: &CardinalSequence) -> CardinalSequence {
        let mut runs = self.runs.clone();
        runs.extend(other.runs.iter().cloned());
        CardinalSequence::from_runs(runs)
    }

    /// `f(beta)` for `beta < total`.
    pub fn value_at(&self, beta: &Ordinal) -> Result<SymbolicCardinal, Error> {
        let mut rest = beta.clone();
        for (v, l) in &self.runs {
            if &rest < l {
                return Ok(*v);
            }
            rest = rest.sub_left(l)?;
        }
        Err(Error::OutOfRange(format!("position {beta} beyond total {}", self.total())))
    }

    /// Run boundaries: `(start, end, value)` triples in order.
    pub fn run_bounds(&self) -> Vec<(Ordinal, Ordinal, SymbolicCardinal)> {
        let mut out = Vec::new();
        let mut start = Ordinal::zero();
        for (v, l) in &self.runs {
            let end = start.add(l);
            out.push((start.clone(), end.clone(), *v));
            start = end;
        }
        out
    }

    /// Membership in `D_λ`: for λ = ω just the value alphabet and `f(0) = ω`;
    /// for uncountable λ additionally every λ⁺-run must start at an ordinal
    /// of cofinality λ or λ⁺.
    pub fn in_d(&self, lambda: SymbolicCardinal) -> Result<bool, Error> {
        if self.runs.is_empty() {
            return Err(Error::EmptySequence);
        }
        if self.runs[0].0 != lambda {
            return Ok(false);
        }
        if lambda == SymbolicCardinal::Omega {
            let ok = self
                .runs
                .iter()
                .all(|(v, _)| matches!(v, SymbolicCardinal::Omega | SymbolicCardinal::Omega1));
            return Ok(ok);
        }
        let Some(plus) = lambda.successor() else {
            return Err(Error::OutOfRange("no successor cardinal available".to_string()));
        };
        if !self.runs.iter().all(|(v, _)| *v == lambda || *v == plus) {
            return Ok(false);
        }
        let lam_atom = lambda.as_atom().expect("uncountable lambda below w3");
        for (start, _, v) in self.run_bounds() {
            if v != plus {
                continue;
            }
            match start.cofinality() {
                Cofinality::Cof(a) if a >= lam_atom => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Searches for a decomposition `f = f_0 ⌢ … ⌢ f_{n-1}` with strictly
    /// decreasing regular `λ_i` and `f_i ∈ D_{λ_i}`. Cuts can only fall on
    /// run boundaries (a mid-run cut would force `λ_{i+1} ∈ {λ_i, λ_i⁺}`,
    /// contradicting the strict decrease), so the exhaustive scan over
    /// boundary subsets is complete. Returns the witness with the fewest
    /// pieces.
    pub fn decompose(&self) -> Option<Vec<(SymbolicCardinal, CardinalSequence)>> {
        if self.runs.is_empty() {
            return None;
        }
        let n = self.runs.len();
        let cut_slots = n - 1;
        let mut masks: Vec<u32> = (0..(1u32 << cut_slots)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        'mask: for mask in masks {
            let mut pieces: Vec<CardinalSequence> = Vec::new();
            let mut current: Vec<(SymbolicCardinal, Ordinal)> = Vec::new();
            for (i, run) in self.runs.iter().enumerate() {
                current.push(run.clone());
                let cut_here = i + 1 < n && (mask >> i) & 1 == 1;
                if cut_here || i + 1 == n {
                    pieces.push(CardinalSequence { runs: core::mem::take(&mut current) });
                }
            }
            let mut out = Vec::new();
            let mut prev: Option<SymbolicCardinal> = None;
            for piece in pieces {
                let lambda = piece.runs[0].0;
                if let Some(p) = prev {
                    if lambda >= p {
                        continue 'mask;
                    }
                }
                match piece.in_d(lambda) {
                    Ok(true) => {}
                    _ => continue 'mask,
                }
                prev = Some(lambda);
                out.push((lambda, piece));
            }
            return Some(out);
        }
        None
    }
}

impl fmt::Display for CardinalSequence {
    /// Text syntax: runs `value^length` joined by `" . "`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.runs.iter().map(|(v, l)| format!("{v}^{l}")).collect();
        write!(f, "{}", parts.join(" . "))
    }
}

impl FromStr for CardinalSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<CardinalSequence, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(CardinalSequence::empty());
        }
        let mut runs = Vec::new();
        for part in s.split(" . ") {
            let (v, l) = part
                .trim()
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("run {part:?} lacks ^length")))?;
            let value: SymbolicCardinal = v.parse()?;
            let length: Ordinal = l.parse()?;
            if length.is_zero() {
                return Err(Error::Parse(format!("zero-length run {part:?}")));
            }
            runs.push((value, length));
        }
        for w in runs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Parse("adjacent runs with equal value".to_string()));
            }
        }
        Ok(CardinalSequence { runs })
    }
}

/// How many copies of a member sequence a union takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Multiplicity {
    Fin(u64),
    Card(SymbolicCardinal),
}

impl Multiplicity {
    /// `count · value` under the cardinal product rule (max for infinite).
    fn times(self, value: SymbolicCardinal) -> SymbolicCardinal {
        match self {
            Multiplicity::Fin(_) => value,
            Multiplicity::Card(c) => c.max(value),
        }
    }
}

/// Level-wise union of a family of spaces described by their sequences:
/// `|I_β(X)| = Σ_j count_j · f_j(β)` over the members still alive at β,
/// with the symbolic sum collapsing to a maximum.
pub fn union_sequence(family: &[(Multiplicity, CardinalSequence)]) -> CardinalSequence {
    let live: Vec<&(Multiplicity, CardinalSequence)> = family
        .iter()
        .filter(|(m, s)| !matches!(m, Multiplicity::Fin(0)) && !s.is_empty())
        .collect();
    let mut boundaries: Vec<Ordinal> = Vec::new();
    for (_, s) in &live {
        for (start, end, _) in s.run_bounds() {
            boundaries.push(start);
            boundaries.push(end);
        }
    }
    boundaries.sort();
    boundaries.dedup();
    let mut runs: Vec<(SymbolicCardinal, Ordinal)> = Vec::new();
    for w in boundaries.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let value = live
            .iter()
            .filter_map(|(m, s)| s.value_at(lo).ok().map(|v| m.times(v)))
            .max();
        if let Some(value) = value {
            runs.push((value, hi.sub_left(lo).expect("boundaries increase")));
        }
    }
    CardinalSequence::from_runs(runs)
}

/// A selection plan: for each κ⁺-run of the target, the pair `(ζ, f(ζ))`
/// naming the block to open and the level at which to stop.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SelectionPlan {
    pub entries: Vec<(Ordinal, Ordinal)>,
    /// The sequence the plan reconstructs; equals the target by construction.
    pub reconstructed: CardinalSequence,
}

/// Computes the plan that carves an open subspace with sequence `s` out of a
/// good space over `[0, delta)`: `Z = Y ∪ ⋃ { I_{<f(ζ)}(Y ∪ Y_ζ) : ζ ∈ J }`
/// where `J` is the set of κ⁺-run starts and `f(ζ)` is the first position at
/// or after `ζ` carrying value κ again (or `δ`).
pub fn plan_universal_subspace(delta: &Ordinal, s: &CardinalSequence) -> Result<SelectionPlan, Error> {
    if &s.total() != delta {
        return Err(Error::OutOfRange(format!(
            "sequence has total {} but delta is {delta}",
            s.total()
        )));
    }
    match s.in_d(SymbolicCardinal::Omega1) {
        Ok(true) => {}
        _ => return Err(Error::NotInD(format!("{s} is not in D_kappa({delta})"))),
    }
    let mut entries = Vec::new();
    for (start, end, v) in s.run_bounds() {
        if v == SymbolicCardinal::Omega2 {
            debug_assert!(start.cofinality().is_at_least_kappa());
            entries.push((start, end));
        }
    }
    let reconstructed = reconstruct_from_plan(delta, &entries);
    debug_assert_eq!(&reconstructed, s);
    Ok(SelectionPlan { entries, reconstructed })
}

/// The sequence realised by a plan: κ⁺ on each `[ζ, f(ζ))`, κ elsewhere.
pub fn reconstruct_from_plan(delta: &Ordinal, entries: &[(Ordinal, Ordinal)]) -> CardinalSequence {
    let mut runs: Vec<(SymbolicCardinal, Ordinal)> = Vec::new();
    let mut pos = Ordinal::zero();
    for (zeta, f_zeta) in entries {
        if &pos < zeta {
            runs.push((SymbolicCardinal::Omega1, zeta.sub_left(&pos).expect("plan sorted")));
        }
        runs.push((SymbolicCardinal::Omega2, f_zeta.sub_left(zeta).expect("nonempty run")));
        pos = f_zeta.clone();
    }
    if &pos < delta {
        runs.push((SymbolicCardinal::Omega1, delta.sub_left(&pos).expect("pos below delta")));
    }
    CardinalSequence::from_runs(runs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> CardinalSequence {
        s.parse().unwrap()
    }

    #[test]
    fn totals_and_concat() {
        let f = seq("w1^w1 . w2^w1");
        assert_eq!(f.total(), o("w1^1*2"));
        assert_eq!(f.concat(&CardinalSequence::empty()), f);
        // ⟨κ⟩_ζ ⌢ ⟨κ⁺⟩_{δ−ζ} has total δ
        let delta = o("w2^1 + w1^1");
        let zeta = o("w2^1");
        let g = CardinalSequence::constant(SymbolicCardinal::Omega1, zeta.clone()).concat(
            &CardinalSequence::constant(SymbolicCardinal::Omega2, delta.sub_left(&zeta).unwrap()),
        );
        assert_eq!(g.total(), delta);
        // run merge when values are equal, with ordinal absorption
        let h = seq("w1^5").concat(&seq("w1^w1"));
        assert_eq!(h.runs().len(), 1);
        assert_eq!(h.total(), o("w1^1"));
    }

    #[test]
    fn value_at_walks_runs() {
        let f = seq("w1^w1 . w2^w1 . w1^3");
        assert_eq!(f.value_at(&o("5")).unwrap(), SymbolicCardinal::Omega1);
        assert_eq!(f.value_at(&o("w1^1")).unwrap(), SymbolicCardinal::Omega2);
        assert_eq!(f.value_at(&o("w1^1*2 + 2")).unwrap(), SymbolicCardinal::Omega1);
        assert!(f.value_at(&o("w1^1*2 + 3")).is_err());
    }

    #[test]
    fn in_d_examples() {
        // constant ⟨κ⟩ sequences are always in D_κ
        let f = CardinalSequence::constant(SymbolicCardinal::Omega1, o("w2^2"));
        assert_eq!(f.in_d(SymbolicCardinal::Omega1), Ok(true));
        // ⟨ω₁⟩_{ω₁} ⌢ ⟨ω₂⟩_{ω₁}: the κ⁺-run starts at ω₁, cf = κ
        assert_eq!(seq("w1^w1 . w2^w1").in_d(SymbolicCardinal::Omega1), Ok(true));
        // ⟨ω₁⟩_ω ⌢ ⟨ω₂⟩_1: starts at ω, cf = ω < κ
        assert_eq!(seq("w1^w^1 . w2^1").in_d(SymbolicCardinal::Omega1), Ok(false));
        // λ = ω only constrains the alphabet and the first value
        assert_eq!(seq("w^1 . w1^w1 . w^3").in_d(SymbolicCardinal::Omega), Ok(true));
        assert_eq!(seq("w1^1 . w^1").in_d(SymbolicCardinal::Omega), Ok(false));
        assert!(CardinalSequence::empty().in_d(SymbolicCardinal::Omega).is_err());
        // successor start fails for uncountable λ
        assert_eq!(seq("w1^5 . w2^1").in_d(SymbolicCardinal::Omega1), Ok(false));
    }

    #[test]
    fn decompose_examples() {
        // single piece
        let f = seq("w^5");
        let d = f.decompose().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0, SymbolicCardinal::Omega);
        assert_eq!(d[0].1, f);
        // two pieces with the cut after the κ⁺-run
        let f = seq("w1^w1 . w2^w1 . w^3");
        let d = f.decompose().unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0, SymbolicCardinal::Omega1);
        assert_eq!(d[0].1, seq("w1^w1 . w2^w1"));
        assert_eq!(d[1].0, SymbolicCardinal::Omega);
        assert_eq!(d[1].1, seq("w^3"));
        // ⟨ω₂⟩⌢⟨ω⟩⌢⟨ω₁⟩ decomposes as ⟨ω₂⟩ then ⟨ω,ω₁⟩ ∈ D_ω
        let f = seq("w2^1 . w^1 . w1^1");
        let d = f.decompose().unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0, SymbolicCardinal::Omega2);
        assert_eq!(d[1].0, SymbolicCardinal::Omega);
        assert_eq!(d[1].1, seq("w^1 . w1^1"));
        // genuinely undecomposable: ω before ω₂ cannot decrease
        assert_eq!(seq("w^1 . w2^1").decompose(), None);
    }

    #[test]
    fn decomposition_revalidates() {
        for s in ["w1^w1 . w2^w1 . w^3", "w2^w2^1 . w1^1", "w^w^1 . w1^w1"] {
            let f = seq(s);
            if let Some(d) = f.decompose() {
                let mut lambdas: Vec<SymbolicCardinal> = Vec::new();
                let mut glued = CardinalSequence::empty();
                for (l, piece) in &d {
                    assert_eq!(piece.in_d(*l), Ok(true));
                    lambdas.push(*l);
                    glued = glued.concat(piece);
                }
                assert!(lambdas.windows(2).all(|w| w[0] > w[1]));
                assert_eq!(glued, f);
            }
        }
    }

    #[test]
    fn union_rules() {
        let f = seq("w2^w1 . w1^2");
        // a single member is returned unchanged
        assert_eq!(union_sequence(&[(Multiplicity::Fin(1), f.clone())]), f);
        // two constants: pointwise max on the common part
        let a = CardinalSequence::constant(SymbolicCardinal::Omega1, o("w^1"));
        let b = CardinalSequence::constant(SymbolicCardinal::Omega2, o("5"));
        let u = union_sequence(&[(Multiplicity::Fin(1), a), (Multiplicity::Fin(1), b)]);
        assert_eq!(u, seq("w2^5 . w1^w^1"));
        // κ⁺ many copies of restrictions: ω₂ · f(β) = f(β)
        let fam: Vec<(Multiplicity, CardinalSequence)> = ["w^1", "w1^1*2", "w1^1*w^1"]
            .iter()
            .map(|l| {
                (
                    Multiplicity::Card(SymbolicCardinal::Omega2),
                    CardinalSequence::constant(SymbolicCardinal::Omega2, o(l)),
                )
            })
            .collect();
        let u = union_sequence(&fam);
        assert_eq!(u, CardinalSequence::constant(SymbolicCardinal::Omega2, o("w1^1*w^1")));
    }

    #[test]
    fn plan_examples() {
        // constant κ target: empty plan
        let delta = o("w1^1*2");
        let s = CardinalSequence::constant(SymbolicCardinal::Omega1, delta.clone());
        let plan = plan_universal_subspace(&delta, &s).unwrap();
        assert!(plan.entries.is_empty());
        assert_eq!(plan.reconstructed, s);
        // one κ⁺-run: the plan opens ζ = ω₁ up to f(ζ) = ω₁·2
        let s = seq("w1^w1 . w2^w1");
        let plan = plan_universal_subspace(&delta, &s).unwrap();
        assert_eq!(plan.entries, alloc::vec![(o("w1^1"), o("w1^1*2"))]);
        // two κ⁺-runs
        let delta = o("w1^1*4");
        let s = seq("w1^w1 . w2^w1 . w1^w1 . w2^w1");
        let plan = plan_universal_subspace(&delta, &s).unwrap();
        assert_eq!(
            plan.entries,
            alloc::vec![(o("w1^1"), o("w1^1*2")), (o("w1^1*3"), o("w1^1*4"))]
        );
        assert_eq!(plan.reconstructed, s);
        // sequences outside D_κ are rejected
        let bad = seq("w1^5 . w2^w1 + 5");
        assert!(matches!(plan_universal_subspace(&bad.total(), &bad), Err(Error::NotInD(_))));
    }

    #[test]
    fn text_round_trip() {
        for s in ["w1^w1 . w2^w1", "w^5", "w1^w2*w1 . w2^1", "w2^w1*2 . w1^3"] {
            let f = seq(s);
            assert_eq!(alloc::format!("{f}"), s);
        }
        assert!("w1^w1 . w1^2".parse::<CardinalSequence>().is_err());
        assert!("w1^0".parse::<CardinalSequence>().is_err());
    }
}
