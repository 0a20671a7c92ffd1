//! Pairwise amalgamation of twin conditions: certificates carrying the
//! post-thinning hypotheses, the construction of the common extension
//! `r = ⟨A_r, ⪯_r, i_r⟩`, and a verification suite that replays every step
//! against brute-force oracles.
//!
//! A certificate stands for a pair `p, q` drawn from a thinned κ⁺-sequence
//! of conditions. The thinning itself (Δ-system, partition arguments) is not
//! a computation at pair scale; instead the certificate records its outcome
//! — the twin isomorphism, the index partition, and the limit values `δ_i` —
//! and the validator enforces every consequence of the hypotheses that is
//! checkable on a pair.

pub mod generate;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::condition::{Condition, Rel, ValidationReport};
use crate::error::Error;
use crate::intervals::{ESet, IntervalTree};
use crate::orbits::{extended_orbit, OrdinalSet};
use crate::ordinal::{CardinalAtom, Cofinality, Ordinal};
use crate::space::{isolating_intervals, point_orbit, BlockId, Point};

/// The twin-pair index classes.
///
/// `K`: kernel (shared points). `F`: distinct twins in one shared non-`S`
/// block. `L`: twins in different blocks over the same base. `D`: twins in
/// the ground block with moving π. `M`: twins in blocks over different
/// bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum IndexClass {
    K,
    F,
    L,
    D,
    M,
}

impl fmt::Display for IndexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IndexClass::K => "K",
            IndexClass::F => "F",
            IndexClass::L => "L",
            IndexClass::D => "D",
            IndexClass::M => "M",
        };
        write!(f, "{s}")
    }
}

/// A twin-pair certificate: the two conditions, the twin bijection `h`
/// (as a map from `p` indices to `q` indices), the index classes, and the
/// limit values `δ_i` the full κ⁺-sequence would determine.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Certificate {
    pub p: Condition,
    pub q: Condition,
    pub h: Vec<usize>,
    pub classes: Vec<IndexClass>,
    pub deltas: Vec<Ordinal>,
    /// Optional order-preserving injective rank on the non-kernel part; when
    /// absent the canonical `(π, index)` linear extension is used.
    #[serde(default)]
    pub rank: Option<Vec<u64>>,
}

impl Certificate {
    pub fn kernel(&self) -> Vec<usize> {
        self.class_indices(IndexClass::K)
    }

    pub fn class_indices(&self, class: IndexClass) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i] == class).collect()
    }

    /// Indices of `A' = A_p \ A`, the non-kernel part.
    pub fn non_kernel(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i] != IndexClass::K).collect()
    }

    /// `L⁺`: the `L` indices whose points are not block bases.
    pub fn l_plus(&self) -> Vec<usize> {
        self.class_indices(IndexClass::L)
            .into_iter()
            .filter(|&i| !self.p.point(i).is_base())
            .collect()
    }
}

/// σ₁ / σ₂ tag of a non-kernel δ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Sigma {
    One,
    Two,
}

/// The window data attached to one non-kernel δ value.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GammaEntry {
    pub delta: Ordinal,
    pub sigma: Sigma,
    /// Least `E(J(δ))` position above `sup(δ ∩ Z)`.
    pub xi: Ordinal,
    /// `γ̲(δ) = ε^{J(δ)}_ξ`.
    pub gamma_lo: Ordinal,
    /// `γ(δ)`: `δ` itself on σ₁, `ε^{J(δ)}_{ξ+κ}` on σ₂.
    pub gamma_hi: Ordinal,
}

/// The `Z`-closure and γ windows computed from a certificate.
#[derive(Debug, Clone)]
pub struct Thinning {
    pub z0: Vec<Ordinal>,
    pub z: Vec<Ordinal>,
    pub gammas: BTreeMap<Ordinal, GammaEntry>,
}

impl Thinning {
    pub fn gamma(&self, delta: &Ordinal) -> Option<&GammaEntry> {
        self.gammas.get(delta)
    }

    pub fn sup_z_below(&self, delta: &Ordinal) -> Option<&Ordinal> {
        self.z.iter().filter(|z| z < &delta).max()
    }
}

/// Computes `Z₀`, its interval closure `Z`, and per-δ windows.
///
/// `Z₀` collects the block bases of kernel and `F` points together with all
/// `δ_i`; `Z` adds the tops of every tree interval meeting `Z₀`.
pub fn thinning(cert: &Certificate, tree: &IntervalTree) -> Result<Thinning, Error> {
    let mut z0: BTreeSet<Ordinal> = BTreeSet::new();
    let mut window_deltas: Vec<Ordinal> = Vec::new();
    for i in 0..cert.classes.len() {
        let x = cert.p.point(i);
        if matches!(cert.classes[i], IndexClass::F | IndexClass::K) && !x.pi_block().is_s() {
            z0.insert(x.pi_minus().clone());
        }
        z0.insert(cert.deltas[i].clone());
        if cert.classes[i] != IndexClass::K {
            window_deltas.push(cert.deltas[i].clone());
        }
    }
    thinning_parts(z0, &window_deltas, tree)
}

/// The same computation from the raw ingredients: the elements of `Z₀` and
/// the δ values that need γ windows. `Z` and the windows depend only on
/// these, never on the chosen π values, which is what lets a generator pick
/// its skeleton first.
pub fn thinning_parts(
    z0: BTreeSet<Ordinal>,
    window_deltas: &[Ordinal],
    tree: &IntervalTree,
) -> Result<Thinning, Error> {
    let mut z = z0.clone();
    for base in &z0 {
        if base >= tree.delta() {
            continue;
        }
        for (_, interval) in tree.tower_full(base)? {
            z.insert(interval.top().clone());
        }
    }
    let mut gammas = BTreeMap::new();
    for d in window_deltas {
        if gammas.contains_key(d) {
            continue;
        }
        let sigma = match d.cofinality() {
            Cofinality::Cof(CardinalAtom::Kappa) => Sigma::One,
            Cofinality::Cof(CardinalAtom::KappaPlus) => Sigma::Two,
            _ => {
                return Err(Error::OutOfRange(format!(
                    "window delta {d} must have cofinality kappa or kappa-plus"
                )))
            }
        };
        let (_, big_j) = tree.limit_interval(d)?;
        let eset = ESet::of(&big_j);
        let sup = z.iter().filter(|x| x < &d).max();
        let xi = match sup {
            None => Ordinal::zero(),
            Some(s) if s < big_j.bot() => Ordinal::zero(),
            Some(s) => eset.floor_position(s).succ(),
        };
        let gamma_lo = eset.index(&xi)?;
        let gamma_hi = match sigma {
            Sigma::One => d.clone(),
            Sigma::Two => eset.index(&xi.add(&Ordinal::kappa()))?,
        };
        gammas.insert(
            d.clone(),
            GammaEntry { delta: d.clone(), sigma, xi, gamma_lo, gamma_hi },
        );
    }
    Ok(Thinning { z0: z0.into_iter().collect(), z: z.into_iter().collect(), gammas })
}

fn class_pair_allowed(a: IndexClass, b: IndexClass) -> bool {
    use IndexClass::*;
    matches!(
        (a, b),
        (K | D, K | D) | (K | F, K | F) | (L, L) | (M, M)
    )
}

/// Validates a certificate: both conditions, the twin isomorphism, the
/// partition clauses, monotonicity, the δ consistency facts, the `Z`
/// closure, goodness, and the pair-level consequences that are theorems
/// under the thinning hypotheses. Any failure marks the certificate
/// malformed.
pub fn validate_certificate(cert: &Certificate, tree: &IntervalTree) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = cert.p.len();
    if cert.q.len() != n
        || cert.h.len() != n
        || cert.classes.len() != n
        || cert.deltas.len() != n
        || cert.rank.as_ref().map_or(false, |r| r.len() != n)
    {
        report.push("shape", String::from("certificate component lengths disagree"));
        return report;
    }
    {
        let mut seen = BTreeSet::new();
        for &hi in &cert.h {
            if hi >= n || !seen.insert(hi) {
                report.push("shape", String::from("h is not a bijection onto q"));
                return report;
            }
        }
    }

    for v in cert.p.validate(tree).violations() {
        report.push("cond-p", format!("[{}] {}", v.rule, v.detail));
    }
    for v in cert.q.validate(tree).violations() {
        report.push("cond-q", format!("[{}] {}", v.rule, v.detail));
    }

    // (B), (C)(a), (C)(b): kernel fixed pointwise; non-kernel disjoint.
    for i in 0..n {
        let (x, y) = (cert.p.point(i), cert.q.point(cert.h[i]));
        let shared_p = cert.q.index_of(x).is_some();
        let shared_q = cert.p.index_of(y).is_some();
        match cert.classes[i] {
            IndexClass::K => {
                if x != y {
                    report.push("C(a)", format!("kernel index {i}: {x} and {y} differ"));
                }
            }
            _ => {
                if x == y || shared_p || shared_q {
                    report.push(
                        "delta-system",
                        format!("non-kernel index {i} shares a point across the pair"),
                    );
                }
            }
        }
    }

    // (C): h is an isomorphism of ⟨A, ⪯, i⟩.
    for i in 0..n {
        for j in 0..n {
            if cert.p.lt(i, j) != cert.q.lt(cert.h[i], cert.h[j]) {
                report.push("iso", format!("order mismatch under h on ({i}, {j})"));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = cert.p.inf(i, j).map(|z| cert.h[z]);
            let rhs = cert.q.inf(cert.h[i], cert.h[j]);
            if lhs != rhs {
                report.push("iso", format!("infimum mismatch under h on ({i}, {j})"));
            }
        }
    }

    // (C)(c)-(e)
    for i in 0..n {
        let (x, y) = (cert.p.point(i), cert.q.point(cert.h[i]));
        if x.pi_block().is_s() != y.pi_block().is_s() {
            report.push("C(d)", format!("index {i}: S-membership differs across the pair"));
        }
        if x.is_base() != y.is_base() {
            report.push("C(e)", format!("index {i}: π = π₋ pattern differs across the pair"));
        }
        for j in 0..n {
            let same_p = x.pi_block() == cert.p.point(j).pi_block();
            let same_q = y.pi_block() == cert.q.point(cert.h[j]).pi_block();
            if same_p != same_q {
                report.push("C(c)", format!("indices {i}, {j}: block pattern differs"));
            }
        }
    }

    // (C)(f): kernel infima are literally equal, hence kernel-valued.
    let kernel: BTreeSet<usize> = cert.kernel().into_iter().collect();
    for &i in &kernel {
        for &j in &kernel {
            if i >= j {
                continue;
            }
            match (cert.p.inf(i, j), cert.q.inf(cert.h[i], cert.h[j])) {
                (None, None) => {}
                (Some(z), Some(w))
                    if cert.p.point(z) == cert.q.point(w) && kernel.contains(&z) => {}
                _ => report.push(
                    "C(f)",
                    format!("kernel pair ({i}, {j}): infima differ across the pair"),
                ),
            }
        }
    }

    // (D): the defining property of each class.
    for i in 0..n {
        let (x, y) = (cert.p.point(i), cert.q.point(cert.h[i]));
        let ok = match cert.classes[i] {
            IndexClass::K => x == y,
            IndexClass::F => x != y && x.pi_block() == y.pi_block() && !x.pi_block().is_s(),
            IndexClass::L => x.pi_block() != y.pi_block() && x.pi_minus() == y.pi_minus(),
            IndexClass::D => x.pi_block().is_s() && x.pi() != y.pi(),
            IndexClass::M => !x.pi_block().is_s() && x.pi_minus() != y.pi_minus(),
        };
        if !ok {
            report.push("D", format!("index {i} fails its class {} definition", cert.classes[i]));
        }
    }

    // (E): block sharing restricted to K∪D, K∪F, L-L, M-M.
    for i in 0..n {
        for j in (i + 1)..n {
            if cert.p.point(i).pi_block() == cert.p.point(j).pi_block()
                && !class_pair_allowed(cert.classes[i], cert.classes[j])
            {
                report.push(
                    "E",
                    format!(
                        "indices {i} ({}) and {j} ({}) share a block",
                        cert.classes[i], cert.classes[j]
                    ),
                );
            }
        }
    }

    // (F): π and π₋ do not decrease from p to q.
    for i in 0..n {
        let (x, y) = (cert.p.point(i), cert.q.point(cert.h[i]));
        if x.pi() > y.pi() || x.pi_minus() > y.pi_minus() {
            report.push("F", format!("index {i}: projections decrease from p to q"));
        }
    }

    // δ_i consistency and Claim 2.5(a).
    for i in 0..n {
        let d = &cert.deltas[i];
        let (x, y) = (cert.p.point(i), cert.q.point(cert.h[i]));
        match cert.classes[i] {
            IndexClass::K => {
                if d != x.pi() {
                    report.push("delta", format!("kernel index {i}: delta must equal π"));
                }
            }
            IndexClass::L => {
                if d != x.pi_minus() {
                    report.push("delta", format!("L index {i}: delta must equal π₋"));
                }
            }
            IndexClass::F | IndexClass::D | IndexClass::M => {
                if d.cofinality() != Cofinality::Cof(CardinalAtom::KappaPlus) {
                    report.push("Claim2.5a", format!("index {i}: cf(delta) must be kappa-plus"));
                    continue;
                }
                match tree.limit_interval(d) {
                    Ok((_, big_j)) if big_j.top() == d => {}
                    _ => {
                        report.push("Claim2.5a", format!("index {i}: sup J(delta) must be delta"));
                        continue;
                    }
                }
                if cert.classes[i] == IndexClass::M {
                    if x.pi_minus() >= d || y.pi_minus() >= d {
                        report.push("Claim2.5a", format!("M index {i}: π₋ must stay below delta"));
                    }
                } else if x.pi() >= d || y.pi() >= d {
                    report.push("Claim2.5a", format!("index {i}: π must stay below delta"));
                }
            }
        }
    }

    // Claim 2.5(b): comparable L-L / M-M pairs share their delta.
    for i in 0..n {
        for j in 0..n {
            if i == j || !cert.p.lt(i, j) {
                continue;
            }
            let same_class = cert.classes[i] == cert.classes[j];
            if same_class
                && matches!(cert.classes[i], IndexClass::L | IndexClass::M)
                && cert.deltas[i] != cert.deltas[j]
            {
                report.push("Claim2.5b", format!("comparable {} pair ({i}, {j}) with distinct deltas", cert.classes[i]));
            }
        }
    }

    let thin = match thinning(cert, tree) {
        Ok(t) => t,
        Err(e) => {
            report.push("gamma", format!("window computation failed: {e}"));
            return report;
        }
    };
    let z_set: BTreeSet<&Ordinal> = thin.z.iter().collect();

    // (G): A is exactly the K ∪ F ∪ D part with π-value in Z.
    for i in 0..n {
        match cert.classes[i] {
            IndexClass::K => {
                if !z_set.contains(cert.p.point(i).pi()) {
                    report.push("Z", format!("kernel index {i}: π must lie in Z"));
                }
            }
            IndexClass::F | IndexClass::D => {
                if z_set.contains(cert.p.point(i).pi())
                    || z_set.contains(cert.q.point(cert.h[i]).pi())
                {
                    report.push("Z", format!("index {i}: π of an F/D point may not lie in Z"));
                }
            }
            _ => {}
        }
    }

    // γ windows must be nondegenerate.
    for (d, entry) in &thin.gammas {
        if entry.gamma_lo >= entry.gamma_hi {
            report.push("gamma", format!("window [{}, {}) for delta {d} is empty", entry.gamma_lo, entry.gamma_hi));
        }
    }

    // Goodness (Def of good conditions), for both members of the pair.
    for i in 0..n {
        let d = &cert.deltas[i];
        let Some(entry) = thin.gammas.get(d) else { continue };
        let (x, y) = (cert.p.point(i), cert.q.point(cert.h[i]));
        match cert.classes[i] {
            IndexClass::F | IndexClass::D => {
                for (side, pt) in [("p", x), ("q", y)] {
                    if pt.pi() < &entry.gamma_hi {
                        report.push(
                            "goodness-i",
                            format!("{side} index {i}: π must lie in J(delta) beyond gamma"),
                        );
                    }
                }
            }
            IndexClass::M => {
                for (side, pt) in [("p", x), ("q", y)] {
                    if pt.pi_minus() < &entry.gamma_hi {
                        report.push(
                            "goodness-ii",
                            format!("{side} index {i}: π₋ must lie in J(delta) beyond gamma"),
                        );
                    }
                }
            }
            IndexClass::L => {
                if entry.sigma == Sigma::Two {
                    let bound = entry.xi.add(&Ordinal::kappa());
                    for (side, pt) in [("p", x), ("q", y)] {
                        let BlockId::Pair { eta, .. } = pt.pi_block() else {
                            continue;
                        };
                        if eta < &bound {
                            report.push(
                                "goodness-iii",
                                format!(
                                    "{side} index {i}: block index {eta} below xi + kappa cuts the extended orbit"
                                ),
                            );
                        }
                    }
                }
            }
            IndexClass::K => {}
        }
    }

    // Claims 2.9-2.13 as pair-level assertions, on both conditions.
    let sides: [(&Condition, alloc::vec::Vec<usize>); 2] = [
        (&cert.p, (0..n).collect()),
        (&cert.q, {
            let mut inv = alloc::vec![0usize; n];
            for i in 0..n {
                inv[cert.h[i]] = i;
            }
            inv
        }),
    ];
    for (side_name, (cond, back)) in ["p", "q"].iter().zip(sides.iter()) {
        for a in 0..n {
            for b in 0..n {
                if a == b || !cond.lt(a, b) {
                    continue;
                }
                let (i, j) = (back[a], back[b]);
                let (x, y) = (cond.point(a), cond.point(b));
                // Claim 2.9
                let ok = x.pi_block().is_s()
                    || (x.pi_block() == y.pi_block()
                        && (matches!(
                            (cert.classes[i], cert.classes[j]),
                            (IndexClass::K | IndexClass::F, IndexClass::K | IndexClass::F)
                                | (IndexClass::L, IndexClass::L)
                                | (IndexClass::M, IndexClass::M)
                        )));
                if !ok {
                    report.push("Claim2.9", format!("{side_name}: comparable pair ({i}, {j}) violates the block/class rule"));
                }
                // Claim 2.10
                if cert.deltas[i] > cert.deltas[j] {
                    report.push("Claim2.10", format!("{side_name}: {i} ⪯ {j} but delta decreases"));
                }
                // Claim 2.11
                if cert.deltas[i] != cert.deltas[j] {
                    let has_kernel_mid = (0..n).any(|c| {
                        cert.classes[back[c]] == IndexClass::K && cond.leq(a, c) && cond.leq(c, b)
                    });
                    if !has_kernel_mid {
                        report.push(
                            "Claim2.11",
                            format!("{side_name}: ({i}, {j}) crosses deltas without a kernel interpolant"),
                        );
                    }
                }
            }
        }
        // Claims 2.12 and 2.13
        for a in 0..n {
            for b in (a + 1)..n {
                if cond.comparable(a, b) || !cond.compatible(a, b) {
                    continue;
                }
                let Some(k) = cond.inf(a, b) else { continue };
                let (i, j, ik) = (back[a], back[b], back[k]);
                let a_kernel = cert.classes[i] == IndexClass::K;
                let b_kernel = cert.classes[j] == IndexClass::K;
                let k_kernel = cert.classes[ik] == IndexClass::K;
                if (a_kernel || b_kernel) && !k_kernel {
                    report.push(
                        "Claim2.12",
                        format!("{side_name}: infimum of ({i}, {j}) with a kernel member leaves the kernel"),
                    );
                }
                if !k_kernel
                    && !(cert.deltas[i] == cert.deltas[j] && cert.deltas[j] == cert.deltas[ik])
                {
                    report.push(
                        "Claim2.13",
                        format!("{side_name}: infimum of ({i}, {j}) neither kernel nor delta-aligned"),
                    );
                }
            }
        }
    }

    report
}

/// Where an `A_r` point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Origin {
    /// `p` point with its `p` index (kernel points are shared).
    P(usize),
    /// Non-kernel `q` point with its `q` index.
    Q(usize),
    /// `y_x` for the `p` index of `x`.
    Y(usize),
    /// `u_x` for the `p` index of `x ∈ L⁺`.
    U(usize),
    /// `u_{x'}` for the `p` index of `x ∈ L⁺`.
    Uq(usize),
}

/// The tagged relations whose union is `⪯_r`.
#[derive(Debug, Clone)]
pub struct Relations {
    pub leq_p: Rel,
    pub leq_q: Rel,
    pub pq: Rel,
    pub r1p: Rel,
    pub r1q: Rel,
    pub r2: Rel,
    pub r3p: Rel,
    pub r3q: Rel,
    pub star: Rel,
    pub r4p: Rel,
    pub r4q: Rel,
    pub r5p: Rel,
    pub r5q: Rel,
    pub full: Rel,
}

/// Everything the amalgamation computes, deterministically, from a
/// certificate.
#[derive(Debug, Clone)]
pub struct AmalgamTrace {
    pub z0: Vec<Ordinal>,
    pub z: Vec<Ordinal>,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub gammas: Vec<GammaEntry>,
    /// `(p index, rank)` for the non-kernel part, in rank order.
    pub rank: Vec<(usize, u64)>,
    /// `β_x` per non-kernel `p` index.
    pub betas: BTreeMap<usize, Ordinal>,
    pub origins: Vec<Origin>,
    /// `g : A_r → A_p` as a map on `r` indices.
    pub g: Vec<usize>,
    pub p_to_r: Vec<usize>,
    pub q_to_r: Vec<usize>,
    pub y_of: BTreeMap<usize, usize>,
    pub u_of: BTreeMap<usize, usize>,
    pub uq_of: BTreeMap<usize, usize>,
    pub relations: Relations,
    pub r: Condition,
}

impl AmalgamTrace {
    /// The kernel as `r` indices.
    pub fn kernel_r(&self, cert: &Certificate) -> Vec<usize> {
        cert.kernel().iter().map(|&i| self.p_to_r[i]).collect()
    }

    /// The `p` index a point of `A_r` projects to under `g`.
    pub fn g_p_index(&self, r_idx: usize) -> usize {
        match self.origins[self.g[r_idx]] {
            Origin::P(i) => i,
            _ => unreachable!("g lands in A_p"),
        }
    }
}

/// Runs the amalgamation. The certificate must validate; the construction
/// itself only fails on window or rank inconsistencies (which a valid
/// certificate excludes).
pub fn amalgamate(cert: &Certificate, tree: &IntervalTree) -> Result<AmalgamTrace, Error> {
    let n = cert.p.len();
    let thin = thinning(cert, tree)?;
    let non_kernel = cert.non_kernel();

    let sigma1: Vec<usize> = non_kernel
        .iter()
        .copied()
        .filter(|i| thin.gammas.get(&cert.deltas[*i]).map_or(false, |g| g.sigma == Sigma::One))
        .collect();
    let sigma2: Vec<usize> = non_kernel
        .iter()
        .copied()
        .filter(|i| thin.gammas.get(&cert.deltas[*i]).map_or(false, |g| g.sigma == Sigma::Two))
        .collect();

    // rk: an order-preserving injective map on ⟨A', ⪯_p⟩. The canonical
    // choice sorts by (π, index), a linear extension because ⪯_p is strictly
    // π-increasing.
    let rank_order: Vec<usize> = match &cert.rank {
        Some(rk) => {
            let mut order = non_kernel.clone();
            order.sort_by_key(|&i| rk[i]);
            for a in 0..order.len() {
                for b in 0..order.len() {
                    if cert.p.lt(order[a], order[b]) && rk[order[a]] >= rk[order[b]] {
                        return Err(Error::OutOfRange(format!(
                            "rank is not order-preserving on ({}, {})",
                            order[a], order[b]
                        )));
                    }
                }
            }
            order
        }
        None => {
            let mut order = non_kernel.clone();
            order.sort_by(|&a, &b| {
                cert.p.point(a).pi().cmp(cert.p.point(b).pi()).then(a.cmp(&b))
            });
            order
        }
    };
    let rank: Vec<(usize, u64)> =
        rank_order.iter().enumerate().map(|(r, &i)| (i, r as u64)).collect();

    // β recursion in rank order: the least element of
    // ō(δ_x) ∩ [γ̲(δ_x), γ(δ_x)) strictly above every β_z for z ≺_p x.
    let mut betas: BTreeMap<usize, Ordinal> = BTreeMap::new();
    for &(i, _) in &rank {
        let d = &cert.deltas[i];
        let entry = thin.gammas.get(d).expect("non-kernel delta has a window");
        let orbit = extended_orbit(tree, d)?;
        let mut bound = entry.gamma_lo.clone();
        for (&z, beta_z) in &betas {
            if cert.p.lt(z, i) && beta_z >= &bound {
                bound = beta_z.succ();
            }
        }
        let beta = orbit
            .first_at_least(&bound)
            .filter(|b| b < &entry.gamma_hi)
            .ok_or_else(|| {
                Error::BetaUnavailable(format!(
                    "index {i}: no element of the extended orbit of {d} in [{bound}, {})",
                    entry.gamma_hi
                ))
            })?;
        betas.insert(i, beta);
    }

    // Assemble the points of A_r.
    let mut points: Vec<Point> = Vec::new();
    let mut origins: Vec<Origin> = Vec::new();
    let mut p_to_r = alloc::vec![usize::MAX; n];
    let mut q_to_r = alloc::vec![usize::MAX; n];
    for i in 0..n {
        points.push(cert.p.point(i).clone());
        origins.push(Origin::P(i));
        p_to_r[i] = i;
    }
    for i in 0..n {
        let qi = cert.h[i];
        if cert.classes[i] == IndexClass::K {
            q_to_r[qi] = p_to_r[i];
        } else {
            points.push(cert.q.point(qi).clone());
            origins.push(Origin::Q(qi));
            q_to_r[qi] = points.len() - 1;
        }
    }
    let mut nu = cert.p.next_nu().max(cert.q.next_nu());
    let mut y_of: BTreeMap<usize, usize> = BTreeMap::new();
    for &(i, rk) in &rank {
        let beta = betas[&i].clone();
        let block = match cert.classes[i] {
            IndexClass::F => cert.p.point(i).pi_block().clone(),
            _ => BlockId::S,
        };
        points.push(Point { block, alpha: beta, nu: Ordinal::from_nat(nu + rk) });
        origins.push(Origin::Y(i));
        y_of.insert(i, points.len() - 1);
    }
    nu += rank.len() as u64;
    let mut u_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut uq_of: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &cert.l_plus() {
        let x = cert.p.point(i);
        points.push(Point {
            block: x.pi_block().clone(),
            alpha: x.pi_minus().clone(),
            nu: Ordinal::from_nat(nu),
        });
        origins.push(Origin::U(i));
        u_of.insert(i, points.len() - 1);
        let x_twin = cert.q.point(cert.h[i]);
        points.push(Point {
            block: x_twin.pi_block().clone(),
            alpha: x_twin.pi_minus().clone(),
            nu: Ordinal::from_nat(nu + 1),
        });
        origins.push(Origin::Uq(i));
        uq_of.insert(i, points.len() - 1);
        nu += 2;
    }
    let m = points.len();

    // g : A_r → A_p.
    let g: Vec<usize> = (0..m)
        .map(|r| match origins[r] {
            Origin::P(i) => p_to_r[i],
            Origin::Q(qi) => {
                let i = cert.h.iter().position(|&h| h == qi).expect("h is onto");
                p_to_r[i]
            }
            Origin::Y(i) | Origin::U(i) | Origin::Uq(i) => p_to_r[i],
        })
        .collect();

    // The component relations.
    let mut leq_p = Rel::new(m);
    let mut leq_q = Rel::new(m);
    for i in 0..n {
        for j in 0..n {
            if cert.p.leq(i, j) {
                leq_p.set(p_to_r[i], p_to_r[j], true);
            }
            if cert.q.leq(i, j) {
                leq_q.set(q_to_r[i], q_to_r[j], true);
            }
        }
    }
    let in_p = |r: usize| matches!(origins[r], Origin::P(_));
    let in_q =
        |r: usize| matches!(origins[r], Origin::Q(_)) || matches!(origins[r], Origin::P(i) if cert.classes[i] == IndexClass::K);

    let mut pq = Rel::new(m);
    for x in 0..m {
        for y in 0..m {
            let linked = (0..m).any(|z| {
                (leq_p.get(x, z) || leq_q.get(x, z)) && (leq_p.get(z, y) || leq_q.get(z, y))
            });
            if linked {
                pq.set(x, y, true);
            }
        }
    }

    let kernel_r: Vec<usize> = cert.kernel().iter().map(|&i| p_to_r[i]).collect();
    let mut r1p = Rel::new(m);
    let mut r1q = Rel::new(m);
    let mut r2 = Rel::new(m);
    let mut r3p = Rel::new(m);
    let mut r3q = Rel::new(m);
    for (&i, &yi) in &y_of {
        for a in 0..m {
            if in_p(a) && leq_p.get(p_to_r[i], a) {
                r1p.set(yi, a, true);
            }
            if in_q(a) && leq_q.get(q_to_r[cert.h[i]], a) {
                r1q.set(yi, a, true);
            }
        }
        for (&j, &yj) in &y_of {
            if cert.p.leq(i, j) {
                r2.set(yi, yj, true);
            }
        }
        for x in 0..m {
            if in_p(x)
                && kernel_r.iter().any(|&a| leq_p.get(x, a) && leq_p.get(a, p_to_r[i]))
            {
                r3p.set(x, yi, true);
            }
            if in_q(x)
                && kernel_r
                    .iter()
                    .any(|&a| leq_q.get(x, a) && leq_q.get(a, q_to_r[cert.h[i]]))
            {
                r3q.set(x, yi, true);
            }
        }
    }
    let mut star = Rel::new(m);
    for x in 0..m {
        for y in 0..m {
            let v = pq.get(x, y)
                || r1p.get(x, y)
                || r1q.get(x, y)
                || r2.get(x, y)
                || r3p.get(x, y)
                || r3q.get(x, y);
            if v {
                star.set(x, y, true);
            }
        }
    }

    let mut r4p = Rel::new(m);
    let mut r4q = Rel::new(m);
    let mut r5p = Rel::new(m);
    let mut r5q = Rel::new(m);
    for (&i, &ui) in &u_of {
        let uqi = uq_of[&i];
        let yi = y_of[&i];
        for s in 0..m {
            if star.get(s, yi) {
                r4p.set(s, ui, true);
                r4q.set(s, uqi, true);
            }
        }
        for t in 0..m {
            if in_p(t) && cert.p.leq(i, p_index(&origins, cert, t)) {
                r5p.set(ui, t, true);
            }
            if in_q(t) && cert.q.leq(cert.h[i], q_index(&origins, cert, t)) {
                r5q.set(uqi, t, true);
            }
        }
    }
    let mut full = star.clone();
    for x in 0..m {
        for y in 0..m {
            if r4p.get(x, y) || r4q.get(x, y) || r5p.get(x, y) || r5q.get(x, y) {
                full.set(x, y, true);
            }
        }
    }
    for (_, &ui) in &u_of {
        full.set(ui, ui, true);
    }
    for (_, &ui) in &uq_of {
        full.set(ui, ui, true);
    }

    // i_r: pairs inside A_p (or A_q) inherit; otherwise the infimum of the
    // g-projections decides, replaced by its y point when it is not kernel.
    let kernel_set: BTreeSet<usize> = kernel_r.iter().copied().collect();
    let mut inf: BTreeMap<(usize, usize), Option<usize>> = BTreeMap::new();
    for s in 0..m {
        for t in (s + 1)..m {
            let key = (s, t);
            if in_p(s) && in_p(t) {
                let (i, j) = (p_index(&origins, cert, s), p_index(&origins, cert, t));
                inf.insert(key, cert.p.inf(i, j).map(|z| p_to_r[z]));
                continue;
            }
            if in_q(s) && in_q(t) {
                let (i, j) = (q_index(&origins, cert, s), q_index(&origins, cert, t));
                inf.insert(key, cert.q.inf(i, j).map(|z| q_to_r[z]));
                continue;
            }
            if full.get(s, t) {
                inf.insert(key, Some(s));
                continue;
            }
            if full.get(t, s) {
                inf.insert(key, Some(t));
                continue;
            }
            let compatible = (0..m).any(|w| full.get(w, s) && full.get(w, t));
            if !compatible {
                inf.insert(key, None);
                continue;
            }
            let (gs, gt) = (g[s], g[t]);
            let v: Option<usize> = if gs == gt {
                Some(gs)
            } else {
                let (i, j) = (p_index(&origins, cert, gs), p_index(&origins, cert, gt));
                if cert.p.leq(i, j) {
                    Some(gs)
                } else if cert.p.leq(j, i) {
                    Some(gt)
                } else {
                    cert.p.inf(i, j).map(|z| p_to_r[z])
                }
            };
            let value = v.map(|vr| {
                if kernel_set.contains(&vr) {
                    vr
                } else {
                    y_of[&p_index(&origins, cert, vr)]
                }
            });
            inf.insert(key, value);
        }
    }

    let mut strict: Vec<(usize, usize)> = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if x != y && full.get(x, y) {
                strict.push((x, y));
            }
        }
    }
    let r = Condition::new(points, &strict, inf);

    Ok(AmalgamTrace {
        z0: thin.z0.clone(),
        z: thin.z.clone(),
        sigma1,
        sigma2,
        gammas: thin.gammas.values().cloned().collect(),
        rank,
        betas,
        origins,
        g,
        p_to_r,
        q_to_r,
        y_of,
        u_of,
        uq_of,
        relations: Relations {
            leq_p,
            leq_q,
            pq,
            r1p,
            r1q,
            r2,
            r3p,
            r3q,
            star,
            r4p,
            r4q,
            r5p,
            r5q,
            full,
        },
        r,
    })
}

fn p_index(origins: &[Origin], _cert: &Certificate, r: usize) -> usize {
    match origins[r] {
        Origin::P(i) => i,
        _ => panic!("r index {r} is not a p point"),
    }
}

fn q_index(origins: &[Origin], cert: &Certificate, r: usize) -> usize {
    match origins[r] {
        Origin::Q(qi) => qi,
        Origin::P(i) => cert.h[i],
        _ => panic!("r index {r} is not a q point"),
    }
}

/// Replays the whole construction against independent oracles: partial-order
/// checks via transitive closure, full validation of `r`, extension of both
/// inputs, and the `g`-map, orbit and isolation facts quantified over `A_r`.
pub fn verify_amalgam(
    cert: &Certificate,
    trace: &AmalgamTrace,
    tree: &IntervalTree,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = trace.r.len();
    let rel = &trace.relations;
    let kernel_r: BTreeSet<usize> = trace.kernel_r(cert).into_iter().collect();
    let in_p = |r: usize| matches!(trace.origins[r], Origin::P(_));
    let in_q = |r: usize| {
        matches!(trace.origins[r], Origin::Q(_))
            || matches!(trace.origins[r], Origin::P(i) if cert.classes[i] == IndexClass::K)
    };
    let in_pq = |r: usize| in_p(r) || in_q(r);
    let delta_of = |r: usize| &cert.deltas[trace.g_p_index(r)];

    // ⪯* is a partial order equal to the closure of its informal generators.
    {
        let star = &rel.star;
        if star.antisymmetry_violation().is_some() || star.transitivity_violation().is_some() {
            report.push("Lemma2.19", String::from("⪯* is not a partial order"));
        }
        let mut gens = Rel::new(m);
        for x in 0..m {
            for y in 0..m {
                if rel.pq.get(x, y) {
                    gens.set(x, y, true);
                }
            }
        }
        for (&i, &yi) in &trace.y_of {
            gens.set(yi, trace.p_to_r[i], true);
            gens.set(yi, trace.q_to_r[cert.h[i]], true);
            for (&j, &yj) in &trace.y_of {
                if cert.p.leq(i, j) {
                    gens.set(yi, yj, true);
                }
            }
            for &a in &kernel_r {
                if rel.leq_p.get(a, trace.p_to_r[i]) {
                    gens.set(a, yi, true);
                }
            }
        }
        // ⪯* equals the reflexive-transitive closure of the informal
        // generators, compared on its domain A_p ∪ A_q ∪ Y.
        let closure = gens.transitive_closure();
        let domain = |r: usize| in_pq(r) || matches!(trace.origins[r], Origin::Y(_));
        for x in (0..m).filter(|&x| domain(x)) {
            for y in (0..m).filter(|&y| domain(y)) {
                let lhs = star.get(x, y) || x == y;
                if lhs != closure.get(x, y) {
                    report.push(
                        "Lemma2.19",
                        format!("⪯* differs from the generated order on ({x}, {y})"),
                    );
                }
            }
        }
    }

    // ⪯_r is a partial order equal to the closure of ⪯* plus the u links.
    {
        let full = &rel.full;
        if !(0..m).all(|i| full.get(i, i)) {
            report.push("Lemma2.20", String::from("⪯_r is not reflexive"));
        }
        if full.antisymmetry_violation().is_some() || full.transitivity_violation().is_some() {
            report.push("Lemma2.20", String::from("⪯_r is not a partial order"));
        }
        let mut gens = rel.star.clone();
        for (&i, &ui) in &trace.u_of {
            let yi = trace.y_of[&i];
            gens.set(yi, ui, true);
            gens.set(ui, trace.p_to_r[i], true);
        }
        for (&i, &uqi) in &trace.uq_of {
            let yi = trace.y_of[&i];
            gens.set(yi, uqi, true);
            gens.set(uqi, trace.q_to_r[cert.h[i]], true);
        }
        let closure = gens.transitive_closure();
        for x in 0..m {
            for y in 0..m {
                if closure.get(x, y) != (full.get(x, y) || x == y) {
                    report.push(
                        "Lemma2.20",
                        format!("⪯_r differs from the generated order on ({x}, {y})"),
                    );
                }
            }
        }
    }

    // r is a condition and extends both inputs.
    for v in trace.r.validate(tree).violations() {
        report.push("P-r", format!("[{}] {}", v.rule, v.detail));
    }
    if !trace.r.extends(&cert.p) {
        report.push("extends", String::from("r does not extend p"));
    }
    if !trace.r.extends(&cert.q) {
        report.push("extends", String::from("r does not extend q"));
    }

    let leq_r = |x: usize, y: usize| x == y || rel.full.get(x, y);
    let leq_p_of = |x: usize, y: usize| rel.leq_p.get(x, y);

    // Claim 1
    for &a in &kernel_r {
        for x in 0..m {
            if leq_r(x, a) != leq_p_of(trace.g[x], a) {
                report.push("Claim1", format!("x ⪯_r a vs g(x) ⪯_p a differ on ({x}, {a})"));
            }
            if leq_r(a, x) != leq_p_of(a, trace.g[x]) {
                report.push("Claim1", format!("a ⪯_r x vs a ⪯_p g(x) differ on ({a}, {x})"));
            }
        }
    }

    // Claim 2
    for x in 0..m {
        for y in 0..m {
            if leq_r(x, y) && !leq_p_of(trace.g[x], trace.g[y]) {
                report.push("Claim2", format!("g is not monotone on ({x}, {y})"));
            }
        }
    }

    // Claim 3
    for (&vi, &_) in &trace.y_of {
        let v_r = trace.p_to_r[vi];
        for s in 0..m {
            if leq_p_of(v_r, trace.g[s]) && !leq_r(trace.y_of[&vi], s) {
                report.push("Claim3", format!("v ⪯_p g(s) but y_v not below s for v = {vi}, s = {s}"));
            }
        }
    }

    // Claim 4
    for x in 0..m {
        for y in 0..m {
            if !leq_r(x, y) || delta_of(x) >= delta_of(y) {
                continue;
            }
            if !kernel_r.iter().any(|&a| leq_r(x, a) && leq_r(a, y)) {
                report.push("Claim4", format!("no kernel interpolant between {x} and {y}"));
            }
        }
    }

    // Claims 5, 6, 8 (orbit facts)
    let orbit_r: Vec<OrdinalSet> = (0..m)
        .map(|x| point_orbit(tree, trace.r.point(x)).unwrap_or_else(|_| OrdinalSet::empty()))
        .collect();
    for &a in &kernel_r {
        let pi_a = trace.r.point(a).pi();
        for x in 0..m {
            if !leq_r(a, x) {
                continue;
            }
            if orbit_r[x].member(pi_a) != orbit_r[trace.g[x]].member(pi_a) {
                report.push("Claim5", format!("π(a) orbit membership differs for a = {a}, x = {x}"));
            }
        }
    }
    for x in 0..m {
        if kernel_r.contains(&x) {
            continue;
        }
        for (&vi, &_) in &trace.y_of {
            let v_r = trace.p_to_r[vi];
            if v_r == trace.g[x] || !leq_p_of(v_r, trace.g[x]) {
                continue;
            }
            if &cert.deltas[vi] != delta_of(x) {
                continue;
            }
            let beta_v = trace.r.point(trace.y_of[&vi]).pi();
            if !orbit_r[x].member(beta_v) {
                report.push("Claim6", format!("π(y_v) missing from o*({x}) for v = {vi}"));
            }
        }
    }
    for s in 0..m {
        if kernel_r.contains(&s) || matches!(trace.origins[s], Origin::Y(_)) {
            continue;
        }
        let vi = trace.g_p_index(s);
        if cert.classes[vi] == IndexClass::K {
            continue;
        }
        let beta_v = trace.r.point(trace.y_of[&vi]).pi();
        if !orbit_r[s].member(beta_v) {
            report.push("Claim8", format!("π(y_v) missing from o*({s}) for v = g({s}) = {vi}"));
        }
    }

    // Claim 9
    for w in 0..m {
        if !in_p(w) {
            continue;
        }
        for s in 0..m {
            if leq_r(w, s) && delta_of(w) == delta_of(s) && !in_p(s) {
                report.push("Claim9", format!("w ⪯_r s with equal deltas leaves A_p on ({w}, {s})"));
            }
        }
    }

    // Claims 10 and 11 (isolation transfer)
    for &a in &kernel_r {
        for t in 0..m {
            if a == t || !leq_r(a, t) {
                continue;
            }
            let lambdas = isolating_intervals(tree, trace.r.point(a), trace.r.point(t))
                .unwrap_or_default();
            for lambda in lambdas {
                if !crate::space::isolates(&lambda, trace.r.point(a), trace.r.point(trace.g[t])) {
                    report.push("Claim10", format!("isolation of ({a}, {t}) does not transfer to g"));
                }
            }
        }
        for x in 0..m {
            if in_pq(x) || !leq_r(x, a) {
                continue;
            }
            let lambdas = isolating_intervals(tree, trace.r.point(x), trace.r.point(a))
                .unwrap_or_default();
            for lambda in lambdas {
                let is_y = matches!(trace.origins[x], Origin::Y(_));
                if !is_y
                    || !crate::space::isolates(&lambda, trace.r.point(trace.g[x]), trace.r.point(a))
                {
                    report.push("Claim11", format!("isolation of ({x}, {a}) does not push to g"));
                }
            }
        }
    }

    // Claim 2.14 (sampled) and the β facts.
    for &(i, _) in &trace.rank {
        let d = &cert.deltas[i];
        let entry = trace.gammas.iter().find(|g| &g.delta == d).expect("window exists");
        let orbit = match extended_orbit(tree, d) {
            Ok(o) => o,
            Err(_) => continue,
        };
        let window: Vec<Ordinal> = {
            let mut out = Vec::new();
            let mut bound = entry.gamma_lo.clone();
            for _ in 0..6 {
                match orbit.first_at_least(&bound) {
                    Some(v) if v < entry.gamma_hi => {
                        bound = v.succ();
                        out.push(v);
                    }
                    _ => break,
                }
            }
            out
        };
        let op = point_orbit(tree, cert.p.point(i)).unwrap_or_else(|_| OrdinalSet::empty());
        let oq =
            point_orbit(tree, cert.q.point(cert.h[i])).unwrap_or_else(|_| OrdinalSet::empty());
        for alpha in &window {
            if !op.member(alpha) || !oq.member(alpha) {
                report.push("Claim2.14", format!("window element {alpha} escapes o*(x) ∩ o*(x') at index {i}"));
            }
        }
        let beta = &trace.betas[&i];
        if beta < &entry.gamma_lo || beta >= &entry.gamma_hi || !orbit.member(beta) {
            report.push("beta", format!("β at index {i} leaves its window"));
        }
        for &(z, _) in &trace.rank {
            if cert.p.lt(z, i) && &trace.betas[&z] >= beta {
                report.push("beta", format!("β not fresh over {z} at index {i}"));
            }
        }
    }

    // Claim 2.15: o*(y_x) covers o*(x) below π(y_x) and the β of lower twins.
    for (&i, &yi) in &trace.y_of {
        let beta = trace.r.point(yi).pi();
        let ox = point_orbit(tree, cert.p.point(i)).unwrap_or_else(|_| OrdinalSet::empty());
        for alpha in ox.enumerate(16) {
            if &alpha < beta && !orbit_r[yi].member(&alpha) {
                report.push("Claim2.15", format!("o*(y) misses {alpha} from o*(x) at index {i}"));
            }
        }
        for &(z, _) in &trace.rank {
            if cert.p.lt(z, i)
                && cert.deltas[z] == cert.deltas[i]
                && !orbit_r[yi].member(&trace.betas[&z])
            {
                report.push("Claim2.15", format!("o*(y) misses β of {z} at index {i}"));
            }
        }
    }

    // Claim 2.16: no kernel point sits above π(y_x) below both twins.
    for (&i, &yi) in &trace.y_of {
        let beta = trace.r.point(yi).pi();
        for &a in &kernel_r {
            if rel.leq_p.get(a, trace.p_to_r[i])
                && rel.leq_q.get(a, trace.q_to_r[cert.h[i]])
                && beta <= trace.r.point(a).pi()
            {
                report.push("Claim2.16", format!("kernel {a} at or above π(y) under both twins of {i}"));
            }
        }
    }

    // Claim 2.17: nothing isolates y_x from x (or from its twin) outside L.
    for (&i, &yi) in &trace.y_of {
        if cert.classes[i] == IndexClass::L {
            continue;
        }
        for target in [trace.p_to_r[i], trace.q_to_r[cert.h[i]]] {
            let lambdas = isolating_intervals(tree, trace.r.point(yi), trace.r.point(target))
                .unwrap_or_default();
            if !lambdas.is_empty() {
                report.push("Claim2.17", format!("interval isolates y from its source at index {i}"));
            }
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::Condition;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn example_tree() -> IntervalTree {
        IntervalTree::new(o("w2^2 + 1")).unwrap()
    }

    /// All-kernel certificate: p = q, every index K.
    fn kernel_only() -> Certificate {
        let points = alloc::vec![Point::s(o("0"), 0), Point::s(o("w2^1"), 1)];
        let mut inf = BTreeMap::new();
        inf.insert((0usize, 1usize), Some(0));
        let c = Condition::new(points, &[(0, 1)], inf);
        Certificate {
            p: c.clone(),
            q: c,
            h: alloc::vec![0, 1],
            classes: alloc::vec![IndexClass::K, IndexClass::K],
            deltas: alloc::vec![o("0"), o("w2^1")],
            rank: None,
        }
    }

    #[test]
    fn kernel_only_certificate_is_valid_and_amalgamates_to_p() {
        let tree = example_tree();
        let cert = kernel_only();
        let report = validate_certificate(&cert, &tree);
        assert!(report.is_valid(), "{report}");
        let trace = amalgamate(&cert, &tree).unwrap();
        assert_eq!(trace.r.len(), cert.p.len());
        assert!(trace.y_of.is_empty());
        assert!(trace.u_of.is_empty());
        let verdict = verify_amalgam(&cert, &trace, &tree);
        assert!(verdict.is_valid(), "{verdict}");
        assert!(trace.r.extends(&cert.p));
    }

    #[test]
    fn monotonicity_violation_is_reported() {
        let tree = example_tree();
        let mut cert = kernel_only();
        // turn index 1 into a D pair whose π decreases from p to q
        let p_pts = alloc::vec![Point::s(o("0"), 0), Point::s(o("w2^1*3"), 1)];
        let q_pts = alloc::vec![Point::s(o("0"), 0), Point::s(o("w2^1*2"), 7)];
        let mut inf = BTreeMap::new();
        inf.insert((0usize, 1usize), Some(0));
        cert.p = Condition::new(p_pts, &[(0, 1)], inf.clone());
        cert.q = Condition::new(q_pts, &[(0, 1)], inf);
        cert.classes = alloc::vec![IndexClass::K, IndexClass::D];
        cert.deltas = alloc::vec![o("0"), o("w2^2")];
        let report = validate_certificate(&cert, &tree);
        assert!(report.rules().contains("F"), "{report}");
    }

    #[test]
    fn thinning_computes_windows() {
        let tree = example_tree();
        let cert = kernel_only();
        let thin = thinning(&cert, &tree).unwrap();
        // Z contains the kernel π values and interval tops above them
        assert!(thin.z.contains(&o("0")));
        assert!(thin.z.contains(&o("w2^1")));
        assert!(thin.z.contains(&o("w2^2")));
        assert!(thin.gammas.is_empty());
    }
}
