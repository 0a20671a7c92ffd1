//! Brute-force reference implementations for the fuzz drivers and test
//! suites: a fully materialised interval tree over finite δ, orbit and
//! isolation scans over it, and a direct-definition membership test for the
//! `D_λ` classes. Nothing here calls the symbolic paths it is checked
//! against.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ordinal::{CardinalAtom, Ordinal};
use crate::sequence::{CardinalSequence, SymbolicCardinal};

/// The interval tree over a finite `δ`, with every level materialised.
/// Finite tops are successors, so each interval `[a,b)` splits into
/// `[a, b-1)` and `{b-1}`, and the tree stabilises after at most `δ` levels.
#[derive(Debug, Clone)]
pub struct FiniteTree {
    delta: u64,
    levels: Vec<Vec<(u64, u64)>>,
}

impl FiniteTree {
    pub fn new(delta: u64) -> FiniteTree {
        assert!(delta > 0);
        let mut levels = alloc::vec![alloc::vec![(0, delta)]];
        loop {
            let prev = levels.last().unwrap();
            let mut next = Vec::new();
            for &(a, b) in prev {
                if b == a + 1 {
                    next.push((a, b));
                } else {
                    next.push((a, b - 1));
                    next.push((b - 1, b));
                }
            }
            if &next == prev {
                break;
            }
            levels.push(next);
        }
        FiniteTree { delta, levels }
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    fn level(&self, n: usize) -> &[(u64, u64)] {
        let n = n.min(self.levels.len() - 1);
        &self.levels[n]
    }

    pub fn locate(&self, alpha: u64, n: usize) -> (u64, u64) {
        *self
            .level(n)
            .iter()
            .find(|&&(a, b)| a <= alpha && alpha < b)
            .expect("levels partition [0, delta)")
    }

    pub fn first_level(&self, alpha: u64) -> usize {
        (0..self.levels.len())
            .find(|&n| self.locate(alpha, n).0 == alpha)
            .expect("every point becomes a bottom")
    }

    /// `E([a,b)) = {a, b-1}` for the finite successor rule.
    pub fn e_set(&self, (a, b): (u64, u64)) -> BTreeSet<u64> {
        [a, b - 1].into_iter().collect()
    }

    /// Basic orbit by direct union over the levels below `n(ζ)`.
    pub fn basic_orbit(&self, zeta: u64) -> BTreeSet<u64> {
        let n = self.first_level(zeta);
        let mut out = BTreeSet::new();
        for m in 0..n {
            for e in self.e_set(self.locate(zeta, m)) {
                if e < zeta {
                    out.insert(e);
                }
            }
        }
        out
    }

    /// Every distinct interval of the tree.
    pub fn all_intervals(&self) -> BTreeSet<(u64, u64)> {
        self.levels.iter().flatten().copied().collect()
    }

    /// All intervals isolating `x` from `y` for ground-block points at the
    /// given π values: `a < x < b <= y`, scanned over the whole tree.
    pub fn isolating(&self, x: u64, y: u64) -> BTreeSet<(u64, u64)> {
        self.all_intervals()
            .into_iter()
            .filter(|&(a, b)| a < x && x < b && b <= y)
            .collect()
    }
}

/// Direct-definition membership test for `D_λ`: materialises `f⁻¹(λ)` as a
/// union of intervals and checks successor closure and `<λ`-closure through
/// ladder order types (plus a literal scan when the domain is finite).
pub fn in_d_direct(f: &CardinalSequence, lambda: SymbolicCardinal) -> Result<bool, Error> {
    if f.is_empty() {
        return Err(Error::EmptySequence);
    }
    let total = f.total();
    if f.value_at(&Ordinal::zero())? != lambda {
        return Ok(false);
    }
    let allowed: &[SymbolicCardinal] = match lambda {
        SymbolicCardinal::Omega => &[SymbolicCardinal::Omega, SymbolicCardinal::Omega1],
        SymbolicCardinal::Omega1 => &[SymbolicCardinal::Omega1, SymbolicCardinal::Omega2],
        SymbolicCardinal::Omega2 => &[SymbolicCardinal::Omega2, SymbolicCardinal::Omega3],
        SymbolicCardinal::Omega3 => return Err(Error::OutOfRange("no successor cardinal".into())),
    };
    if f.runs().iter().any(|(v, _)| !allowed.contains(v)) {
        return Ok(false);
    }
    if lambda == SymbolicCardinal::Omega {
        return Ok(true);
    }
    let lam_atom = lambda.as_atom().expect("uncountable lambda below w3");

    // literal check on a fully materialised domain
    if let Some(n) = total.as_nat() {
        let mut level_set = BTreeSet::new();
        for beta in 0..n {
            if f.value_at(&Ordinal::from_nat(beta))? == lambda {
                level_set.insert(beta);
            }
        }
        for &beta in &level_set {
            if beta + 1 < n && !level_set.contains(&(beta + 1)) {
                return Ok(false);
            }
        }
        return Ok(true);
    }

    for (start, end, v) in f.run_bounds() {
        if v != lambda {
            continue;
        }
        if end == total {
            continue;
        }
        match end.pred() {
            Some(_) => return Ok(false), // successor closure fails at a successor run end
            None => {
                // the run tail is an increasing cf(end)-sequence inside
                // f⁻¹(λ) with supremum end ∉ f⁻¹(λ); the ladder length is
                // that cofinality
                let ladder = end.ladder().expect("non-successor positive end is a limit");
                debug_assert!(ladder.sup() == &end && start < end);
                if ladder.length() < lam_atom {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exhaustive cut search for the decreasing-cardinal decomposition, judged
/// entirely by [`in_d_direct`]. Returns whether any witness exists.
pub fn decompose_exists_direct(f: &CardinalSequence) -> bool {
    let runs = f.runs();
    if runs.is_empty() {
        return false;
    }
    let slots = runs.len() - 1;
    'mask: for mask in 0u32..(1 << slots) {
        let mut pieces: Vec<CardinalSequence> = Vec::new();
        let mut current: Vec<(SymbolicCardinal, Ordinal)> = Vec::new();
        for (i, run) in runs.iter().enumerate() {
            current.push(run.clone());
            if i == runs.len() - 1 || (mask >> i) & 1 == 1 {
                pieces.push(CardinalSequence::from_runs(core::mem::take(&mut current)));
            }
        }
        let mut prev: Option<SymbolicCardinal> = None;
        for piece in &pieces {
            let lambda = piece.runs()[0].0;
            if prev.map_or(false, |p| lambda >= p) {
                continue 'mask;
            }
            if in_d_direct(piece, lambda) != Ok(true) {
                continue 'mask;
            }
            prev = Some(lambda);
        }
        return true;
    }
    false
}

/// Order- and arithmetic-faithful surrogate for the bounded ordinal class:
/// base-ω Cantor normal form with natural-number exponents, on which the
/// textbook algorithms are implemented from scratch. `(e2, e1, e0)` maps to
/// the exponent `e2·B² + e1·B + e0`, which is order-faithful while all
/// exponents stay below `B`.
pub mod surrogate {
    use alloc::vec::Vec;

    pub const B: u64 = 1 << 20;

    /// CNF over base ω: strictly decreasing exponents with positive
    /// coefficients.
    pub type Cnf = Vec<(u64, u64)>;

    pub fn exponent(e2: u32, e1: u32, e0: u32) -> u64 {
        (e2 as u64) * B * B + (e1 as u64) * B + (e0 as u64)
    }

    pub fn cmp(a: &Cnf, b: &Cnf) -> core::cmp::Ordering {
        for (x, y) in a.iter().zip(b.iter()) {
            let ord = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
            if ord != core::cmp::Ordering::Equal {
                return ord;
            }
        }
        a.len().cmp(&b.len())
    }

    pub fn add(a: &Cnf, b: &Cnf) -> Cnf {
        let Some(&(lead, c)) = b.first() else {
            return a.clone();
        };
        let mut out: Cnf = a.iter().copied().take_while(|&(e, _)| e > lead).collect();
        let mut rest = b.clone();
        if let Some(&(e, c0)) = a.get(out.len()) {
            if e == lead {
                rest[0] = (lead, c0 + c);
            }
        }
        out.extend(rest);
        out
    }

    /// Left subtraction: the unique `x` with `z + x = d`, when `z <= d`.
    pub fn sub_left(d: &Cnf, z: &Cnf) -> Option<Cnf> {
        let mut i = 0;
        loop {
            if i == z.len() {
                return Some(d[i..].to_vec());
            }
            if i == d.len() {
                return None;
            }
            let (dm, zm) = (d[i], z[i]);
            if dm == zm {
                i += 1;
                continue;
            }
            return if zm.0 == dm.0 && zm.1 < dm.1 {
                let mut out = alloc::vec![(dm.0, dm.1 - zm.1)];
                out.extend_from_slice(&d[i + 1..]);
                Some(out)
            } else if zm.0 < dm.0 {
                Some(d[i..].to_vec())
            } else {
                None
            };
        }
    }
}

/// Bridge from the symbolic class into the surrogate CNF.
pub fn to_surrogate(x: &Ordinal) -> surrogate::Cnf {
    x.monomials()
        .iter()
        .map(|m| (surrogate::exponent(m.exps.e2, m.exps.e1, m.exps.e0), m.coeff))
        .collect()
}

/// The cofinality atoms ordered for comparisons in the oracles.
pub fn atom_le(a: CardinalAtom, b: CardinalAtom) -> bool {
    a <= b
}
