//! Forcing conditions `⟨A, ⪯, i⟩`: the (P1)–(P6) validator, the extension
//! order, infimum checking, and the point-addition algorithm.
//!
//! A condition is immutable. Validation never fails early: it produces a
//! report listing every violated axiom with a witnessing tuple, so fuzzers
//! can shrink against the full picture.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::intervals::IntervalTree;
use crate::orbits::OrdinalSet;
use crate::ordinal::Ordinal;
use crate::space::{isolating_intervals, point_orbit, BlockId, Point};

/// Dense boolean relation over point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rel {
    n: usize,
    bits: Vec<bool>,
}

impl Rel {
    pub fn new(n: usize) -> Rel {
        Rel { n, bits: alloc::vec![false; n * n] }
    }

    pub fn identity(n: usize) -> Rel {
        let mut r = Rel::new(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) && self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if self.get(j, k) && !self.get(i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn transitive_closure(&self) -> Rel {
        let mut r = self.clone();
        for i in 0..self.n {
            r.set(i, i, true);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if r.get(i, k) {
                    for j in 0..self.n {
                        if r.get(k, j) {
                            r.set(i, j, true);
                        }
                    }
                }
            }
        }
        r
    }
}

/// Outcome of the exhaustive greatest-lower-bound scan for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteInf {
    /// No common lower bound: the pair is incompatible.
    Empty,
    /// The greatest common lower bound.
    Greatest(usize),
    /// Common lower bounds exist but none is greatest; (P4) is unsatisfiable.
    NoGreatest,
}

/// A forcing condition `⟨A, ⪯, i⟩` over the tree's space.
///
/// `inf` is total on unordered pairs: every pair maps to a point index or to
/// `None`, the explicit "undefined" of the infimum function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    points: Vec<Point>,
    leq: Rel,
    inf: BTreeMap<(usize, usize), Option<usize>>,
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Condition {
    pub fn empty() -> Condition {
        Condition { points: Vec::new(), leq: Rel::new(0), inf: BTreeMap::new() }
    }

    /// Builds a condition from points, the strict order pairs, and the
    /// infimum entries. Reflexive pairs are added automatically; nothing is
    /// validated here.
    pub fn new(
        points: Vec<Point>,
        strict: &[(usize, usize)],
        inf: BTreeMap<(usize, usize), Option<usize>>,
    ) -> Condition {
        let n = points.len();
        let mut leq = Rel::identity(n);
        for &(i, j) in strict {
            leq.set(i, j, true);
        }
        let mut norm = BTreeMap::new();
        for ((i, j), v) in inf {
            norm.insert(pair_key(i, j), v);
        }
        Condition { points, leq, inf: norm }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq.get(i, j)
    }

    pub fn rel(&self) -> &Rel {
        &self.leq
    }

    pub fn inf(&self, i: usize, j: usize) -> Option<usize> {
        self.inf.get(&pair_key(i, j)).copied().flatten()
    }

    /// The raw infimum entry; outer `None` means the pair is missing from
    /// the map entirely (only possible in hand-built JSON).
    pub fn inf_entry(&self, i: usize, j: usize) -> Option<Option<usize>> {
        self.inf.get(&pair_key(i, j)).copied()
    }

    pub fn inf_map(&self) -> &BTreeMap<(usize, usize), Option<usize>> {
        &self.inf
    }

    pub fn common_lower_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.leq(a, i) && self.leq(a, j)).collect()
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn compatible(&self, i: usize, j: usize) -> bool {
        !self.common_lower_bounds(i, j).is_empty()
    }

    /// Exhaustive greatest-lower-bound computation, the oracle for (P4).
    pub fn brute_force_inf(&self, i: usize, j: usize) -> BruteInf {
        let clb = self.common_lower_bounds(i, j);
        if clb.is_empty() {
            return BruteInf::Empty;
        }
        match clb.iter().find(|&&z| clb.iter().all(|&a| self.leq(a, z))) {
            Some(&z) => BruteInf::Greatest(z),
            None => BruteInf::NoGreatest,
        }
    }

    pub fn brute_force_infima(&self) -> BTreeMap<(usize, usize), BruteInf> {
        let mut out = BTreeMap::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                out.insert((i, j), self.brute_force_inf(i, j));
            }
        }
        out
    }

    /// Largest ν coordinate in use, for generating fresh points.
    pub fn next_nu(&self) -> u64 {
        self.points.iter().filter_map(|p| p.nu.as_nat()).max().map_or(0, |m| m + 1)
    }

    /// Full (P1)–(P6) validation against the tree.
    pub fn validate(&self, tree: &IntervalTree) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.len();

        for (i, p) in self.points.iter().enumerate() {
            if let Err(e) = p.well_formed(tree) {
                report.push("point", format!("point {i} = {p} malformed: {e}"));
            }
            for (j, q) in self.points.iter().enumerate().skip(i + 1) {
                if p == q {
                    report.push("point", format!("points {i} and {j} coincide: {p}"));
                }
            }
        }

        if !self.leq.is_reflexive() {
            report.push("order", String::from("order is not reflexive"));
        }
        if let Some((i, j)) = self.leq.antisymmetry_violation() {
            report.push("order", format!("antisymmetry fails on ({i}, {j})"));
        }
        if let Some((i, j, k)) = self.leq.transitivity_violation() {
            report.push("order", format!("transitivity fails on ({i}, {j}, {k})"));
        }

        // (P2)
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && self.points[i].pi() >= self.points[j].pi() {
                    report.push(
                        "P2",
                        format!("{} ⪯ {} but π does not increase", self.points[i], self.points[j]),
                    );
                }
            }
        }

        // (P3)
        for i in 0..n {
            for j in 0..n {
                if !self.lt(i, j) {
                    continue;
                }
                let (x, y) = (&self.points[i], &self.points[j]);
                match y.pi_block() {
                    BlockId::Pair { zeta, .. } => {
                        if zeta <= x.pi() {
                            if x.pi_block() != y.pi_block() {
                                report.push("P3a", format!("{x} ⪯ {y}: blocks must agree"));
                            }
                        } else if !x.pi_block().is_s() {
                            report.push("P3b", format!("{x} ⪯ {y}: lower point must lie in S"));
                        }
                    }
                    BlockId::S => {
                        if !x.pi_block().is_s() {
                            report.push("P3c", format!("{x} ⪯ {y}: lower point must lie in S"));
                        }
                    }
                }
            }
        }

        // (P4): the stored infimum must equal the exhaustive greatest lower
        // bound, and every pair must carry an entry.
        for i in 0..n {
            for j in (i + 1)..n {
                let brute = self.brute_force_inf(i, j);
                match self.inf_entry(i, j) {
                    None => report.push("P4", format!("pair ({i}, {j}) missing from inf map")),
                    Some(None) => {
                        if brute != BruteInf::Empty {
                            report.push(
                                "P4",
                                format!("inf({i}, {j}) undefined but common lower bounds exist"),
                            );
                        }
                    }
                    Some(Some(z)) => {
                        if z >= n {
                            report.push("P4", format!("inf({i}, {j}) = {z} out of range"));
                        } else if brute != BruteInf::Greatest(z) {
                            report.push(
                                "P4",
                                format!("inf({i}, {j}) = {z} is not the greatest lower bound"),
                            );
                        }
                    }
                }
            }
        }

        // (P5): incomparable but compatible pairs meet in both orbits.
        let orbit_of = |i: usize| point_orbit(tree, &self.points[i]);
        for i in 0..n {
            for j in (i + 1)..n {
                if self.comparable(i, j) || !self.compatible(i, j) {
                    continue;
                }
                let Some(z) = self.inf(i, j) else {
                    continue; // already a (P4) violation
                };
                let pi_z = self.points[z].pi();
                let (oi, oj) = match (orbit_of(i), orbit_of(j)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => continue, // malformed point already reported
                };
                if !oi.member(pi_z) || !oj.member(pi_z) {
                    report.push(
                        "P5",
                        format!(
                            "π(i{{{}, {}}}) = {pi_z} not in o*({}) ∩ o*({})",
                            self.points[i], self.points[j], self.points[i], self.points[j]
                        ),
                    );
                }
            }
        }

        // (P6)
        for i in 0..n {
            for j in 0..n {
                if !self.lt(i, j) {
                    continue;
                }
                let x = &self.points[i];
                let y = &self.points[j];
                let clause = if x.pi_block().is_s() {
                    "P6a"
                } else if !x.is_base() {
                    "P6b"
                } else {
                    continue;
                };
                let lambdas = match isolating_intervals(tree, x, y) {
                    Ok(l) => l,
                    Err(e) => {
                        report.push(clause, format!("isolating scan failed for {x} ⪯ {y}: {e}"));
                        continue;
                    }
                };
                for lambda in lambdas {
                    let witness = (0..n).any(|k| {
                        self.leq(i, k) && self.leq(k, j) && self.points[k].pi() == lambda.top()
                    });
                    if !witness {
                        report.push(
                            clause,
                            format!("{lambda} isolates {x} from {y}: no interpolant at {}", lambda.top()),
                        );
                    }
                }
            }
        }

        report
    }

    /// Block-placement consequences of (P6) interpolants: for every
    /// `x ⪯ z ⪯ y` with `π(z) = Λ⁺` for an isolating `Λ`, the block of `z`
    /// is forced by the blocks of `x` and `y`.
    pub fn check_claim_2_1(&self, tree: &IntervalTree) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if !self.lt(i, j) {
                    continue;
                }
                let x = &self.points[i];
                let y = &self.points[j];
                if !x.pi_block().is_s() && x.is_base() {
                    continue;
                }
                let Ok(lambdas) = isolating_intervals(tree, x, y) else {
                    continue;
                };
                for lambda in lambdas {
                    for k in 0..n {
                        if !(self.leq(i, k) && self.leq(k, j)) {
                            continue;
                        }
                        let z = &self.points[k];
                        if z.pi() != lambda.top() {
                            continue;
                        }
                        if x.pi_block() == y.pi_block() {
                            if z.pi_block() != x.pi_block() {
                                report.push(
                                    "Claim2.1a",
                                    format!("interpolant {z} leaves the block of {x} and {y}"),
                                );
                            }
                        } else if lambda.top() < y.pi_minus() {
                            if z.pi_block() != x.pi_block() {
                                report.push(
                                    "Claim2.1b",
                                    format!("interpolant {z} must share the block of {x}"),
                                );
                            }
                        } else if lambda.top() == y.pi_minus() && z.pi_block() != y.pi_block() {
                            report.push(
                                "Claim2.1c",
                                format!("interpolant {z} must share the block of {y}"),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// Extension order: `self ≤ weaker` iff the points of `weaker` all occur
    /// in `self`, the order restricts exactly, and the infimum map of
    /// `weaker` is the restriction of the one of `self`.
    pub fn extends(&self, weaker: &Condition) -> bool {
        let Some(map): Option<Vec<usize>> =
            weaker.points.iter().map(|p| self.index_of(p)).collect()
        else {
            return false;
        };
        for i in 0..weaker.len() {
            for j in 0..weaker.len() {
                if weaker.leq(i, j) != self.leq(map[i], map[j]) {
                    return false;
                }
            }
        }
        for i in 0..weaker.len() {
            for j in (i + 1)..weaker.len() {
                let ours = self.inf_entry(map[i], map[j]).unwrap_or(None);
                let theirs = weaker.inf_entry(i, j).unwrap_or(None);
                match (ours, theirs) {
                    (None, None) => {}
                    (Some(z), Some(w)) if z == map[w] => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Point addition: a fresh point `b` with `π(b) = alpha` placed below
    /// `x`, together with the closure chain `{b_γ : γ ∈ K}` that keeps (P6)
    /// interpolable. `K` is the minimal subset of `[alpha, π(x))` containing
    /// `alpha` and closed under tops of isolating-capable intervals below
    /// `π(x)`: only intervals with bottom strictly below `γ` can isolate a
    /// point at `γ`, so the tower entry starting at `γ` itself contributes
    /// nothing.
    pub fn add_point_below(
        &self,
        x: usize,
        alpha: &Ordinal,
        tree: &IntervalTree,
    ) -> Result<AddPoint, Error> {
        let beta = self.points[x].pi().clone();
        if alpha >= &beta {
            return Err(Error::OutOfRange(format!("alpha {alpha} not below π(x) = {beta}")));
        }
        let cap = 10 * (tree.delta().monomials().len() + beta.monomials().len() + 2);
        let mut k_set: BTreeSet<Ordinal> = BTreeSet::new();
        k_set.insert(alpha.clone());
        loop {
            let mut fresh: Vec<Ordinal> = Vec::new();
            for gamma in &k_set {
                for (_, interval) in tree.tower(gamma)? {
                    if interval.bot() >= gamma {
                        continue;
                    }
                    let t = interval.top();
                    if t < &beta && !k_set.contains(t) && !fresh.contains(t) {
                        fresh.push(t.clone());
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            k_set.extend(fresh);
            if k_set.len() > cap {
                return Err(Error::DepthExceeded);
            }
        }

        let mut points = self.points.clone();
        let mut nu = self.next_nu();
        let x_point = self.points[x].clone();
        let mut new_indices = Vec::new();
        for gamma in &k_set {
            let block = match x_point.pi_block() {
                BlockId::S => BlockId::S,
                pair @ BlockId::Pair { .. } => {
                    if gamma >= x_point.pi_minus() {
                        pair.clone()
                    } else {
                        BlockId::S
                    }
                }
            };
            points.push(Point { block, alpha: gamma.clone(), nu: Ordinal::from_nat(nu) });
            new_indices.push(points.len() - 1);
            nu += 1;
        }

        let n = points.len();
        let old_n = self.points.len();
        let mut leq = Rel::identity(n);
        for i in 0..old_n {
            for j in 0..old_n {
                if self.leq.get(i, j) {
                    leq.set(i, j, true);
                }
            }
        }
        // chain among the new points, and each new point below every
        // z with x ⪯ z
        for (a, &i) in new_indices.iter().enumerate() {
            for &j in new_indices.iter().skip(a + 1) {
                leq.set(i, j, true);
            }
            for z in 0..old_n {
                if self.leq.get(x, z) {
                    leq.set(i, z, true);
                }
            }
        }

        let mut inf = self.inf.clone();
        for (a, &i) in new_indices.iter().enumerate() {
            for &j in new_indices.iter().take(a) {
                inf.insert(pair_key(i, j), Some(j));
            }
            for z in 0..old_n {
                let v = if self.leq.get(x, z) { Some(i) } else { None };
                inf.insert(pair_key(i, z), v);
            }
        }

        let b = new_indices[0]; // K is sorted, so the first new point is b_alpha
        Ok(AddPoint { condition: Condition { points, leq, inf }, b, added: new_indices })
    }
}

/// Result of [`Condition::add_point_below`].
#[derive(Debug, Clone)]
pub struct AddPoint {
    pub condition: Condition,
    /// Index of the requested point `b` with `π(b) = alpha`.
    pub b: usize,
    /// Indices of all added closure points, in increasing `π` order.
    pub added: Vec<usize>,
}

/// Validation outcome: empty means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl ValidationReport {
    pub fn push(&mut self, rule: &'static str, detail: String) {
        self.violations.push(Violation { rule, detail });
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn rules(&self) -> BTreeSet<&'static str> {
        self.violations.iter().map(|v| v.rule).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "[{}] {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

impl serde::Serialize for Condition {
    /// JSON schema: `{"points": [...], "order": [[i,j],...], "inf": [[i,j,k|null],...]}`
    /// with `order` listing the strict pairs.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut order: Vec<(usize, usize)> = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j) {
                    order.push((i, j));
                }
            }
        }
        let inf: Vec<(usize, usize, Option<usize>)> =
            self.inf.iter().map(|(&(i, j), &v)| (i, j, v)).collect();
        let mut s = serializer.serialize_struct("Condition", 3)?;
        s.serialize_field("points", &self.points)?;
        s.serialize_field("order", &order)?;
        s.serialize_field("inf", &inf)?;
        s.end()
    }
}

impl<'de> serde::Deserialize<'de> for Condition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Condition, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            points: Vec<Point>,
            #[serde(default)]
            order: Vec<(usize, usize)>,
            #[serde(default)]
            inf: Vec<(usize, usize, Option<usize>)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let n = raw.points.len();
        for &(i, j) in &raw.order {
            if i >= n || j >= n {
                return Err(serde::de::Error::custom("order index out of range"));
            }
        }
        for &(i, j, v) in &raw.inf {
            if i >= n || j >= n || v.map_or(false, |k| k >= n) {
                return Err(serde::de::Error::custom("inf index out of range"));
            }
        }
        let inf = raw.inf.into_iter().map(|(i, j, v)| ((i, j), v)).collect();
        Ok(Condition::new(raw.points, &raw.order, inf))
    }
}

/// o*(x) for a point of a condition; convenience re-export used by callers
/// that already hold a condition.
pub fn orbit(tree: &IntervalTree, p: &Point) -> Result<OrdinalSet, Error> {
    point_orbit(tree, p)
}
