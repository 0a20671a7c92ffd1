//! Fuzz front-end: builds twin-pair certificates satisfying the thinning
//! hypotheses by drawing π values from ladder tails beyond the γ windows,
//! plus a mutation catalogue of guaranteed-breaking single-field edits.
//!
//! The generator works in two phases. Phase A fixes the index classes, the
//! δ values, block bases and the chain structure (a parent forest rooted at
//! an `S`-point over 0, whose pairs are automatically exempt from the
//! interpolation axiom). Phase B computes the `Z`-closure and γ windows from
//! that skeleton — they depend only on δ values and block bases — and then
//! materialises the π values on `E(J(δ))` ladder tails, where consecutive
//! points never admit isolating intervals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};

use super::{thinning_parts, validate_certificate, Certificate, IndexClass, Sigma};
use crate::condition::Condition;
use crate::error::Error;
use crate::intervals::{ESet, IntervalTree};
use crate::ordinal::{CardinalAtom, Cofinality, Ordinal};
use crate::space::{BlockId, Point};

/// Requested index counts per class. `l0` asks for base-point `L` indices,
/// `l_plus` for non-base ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Shape {
    pub kernel: usize,
    pub f: usize,
    pub l0: usize,
    pub l_plus: usize,
    pub d: usize,
    pub m: usize,
}

impl Shape {
    /// A shape touching every class at once.
    pub fn covering() -> Shape {
        Shape { kernel: 2, f: 2, l0: 1, l_plus: 1, d: 2, m: 2 }
    }

    pub fn kernel_only(kernel: usize) -> Shape {
        Shape { kernel, f: 0, l0: 0, l_plus: 0, d: 0, m: 0 }
    }

    pub fn total(&self) -> usize {
        self.kernel + self.f + self.l0 + self.l_plus + self.d + self.m
    }
}

/// Candidate ordinals below δ harvested from the `E`-sets of the first tree
/// levels.
pub fn sample_pool(tree: &IntervalTree) -> Vec<Ordinal> {
    let menu: Vec<Ordinal> =
        ["1", "2", "3", "5", "7", "w", "w + 1", "w*2", "w1", "w1 + 1", "w1*2", "w1*2 + 3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
    let mut out: BTreeSet<Ordinal> = BTreeSet::new();
    let mut frontier = alloc::vec![tree.root()];
    for _ in 0..3 {
        let mut next: Vec<crate::intervals::Interval> = Vec::new();
        for interval in &frontier {
            let eset = ESet::of(interval);
            for nu in &menu {
                if let Ok(v) = eset.index(nu) {
                    if !v.is_zero() && &v < tree.delta() {
                        out.insert(v);
                    }
                }
            }
            // descend into the first few partition pieces
            for nu in 0..3u64 {
                let (Ok(lo), Ok(hi)) = (
                    eset.index(&Ordinal::from_nat(nu)),
                    eset.index(&Ordinal::from_nat(nu + 1)),
                ) else {
                    break;
                };
                if lo.succ() < hi {
                    next.push(crate::intervals::Interval::new(lo, hi).expect("E increases"));
                }
            }
        }
        next.truncate(6);
        frontier = next;
    }
    out.into_iter().collect()
}

fn cf_is(x: &Ordinal, atom: CardinalAtom) -> bool {
    x.cofinality() == Cofinality::Cof(atom)
}

/// One point under construction: twins plus bookkeeping.
struct Draft {
    class: IndexClass,
    delta: Ordinal,
    p: Point,
    q: Point,
    parent: Option<usize>,
}

struct Builder {
    drafts: Vec<Draft>,
    nu_kernel: u64,
    nu_p: u64,
    nu_q: u64,
}

impl Builder {
    fn new() -> Builder {
        Builder { drafts: Vec::new(), nu_kernel: 0, nu_p: 100, nu_q: 200 }
    }

    fn add_kernel(&mut self, block: BlockId, alpha: Ordinal, parent: Option<usize>) -> usize {
        let pt = Point { block, alpha: alpha.clone(), nu: Ordinal::from_nat(self.nu_kernel) };
        self.nu_kernel += 1;
        self.drafts.push(Draft {
            class: IndexClass::K,
            delta: alpha,
            p: pt.clone(),
            q: pt,
            parent,
        });
        self.drafts.len() - 1
    }

    fn add_twins(
        &mut self,
        class: IndexClass,
        delta: Ordinal,
        p: (BlockId, Ordinal),
        q: (BlockId, Ordinal),
        parent: Option<usize>,
    ) -> usize {
        let p = Point { block: p.0, alpha: p.1, nu: Ordinal::from_nat(self.nu_p) };
        let q = Point { block: q.0, alpha: q.1, nu: Ordinal::from_nat(self.nu_q) };
        self.nu_p += 1;
        self.nu_q += 1;
        self.drafts.push(Draft { class, delta, p, q, parent });
        self.drafts.len() - 1
    }

    fn ancestors(&self, mut i: usize) -> Vec<usize> {
        let mut out = alloc::vec![i];
        while let Some(p) = self.drafts[i].parent {
            out.push(p);
            i = p;
        }
        out
    }

    fn finish(self) -> Certificate {
        let n = self.drafts.len();
        let mut strict: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for &a in self.ancestors(i).iter().skip(1) {
                strict.push((a, i));
            }
        }
        // infima: down-sets are chains in a parent forest, so the greatest
        // common lower bound is the deepest common ancestor
        let mut inf: BTreeMap<(usize, usize), Option<usize>> = BTreeMap::new();
        for i in 0..n {
            let ai: BTreeSet<usize> = self.ancestors(i).into_iter().collect();
            for j in (i + 1)..n {
                let common = self
                    .ancestors(j)
                    .into_iter()
                    .filter(|a| ai.contains(a))
                    .max_by_key(|&a| self.ancestors(a).len());
                inf.insert((i, j), common);
            }
        }
        let p_points: Vec<Point> = self.drafts.iter().map(|d| d.p.clone()).collect();
        let q_points: Vec<Point> = self.drafts.iter().map(|d| d.q.clone()).collect();
        Certificate {
            p: Condition::new(p_points, &strict, inf.clone()),
            q: Condition::new(q_points, &strict, inf),
            h: (0..n).collect(),
            classes: self.drafts.iter().map(|d| d.class).collect(),
            deltas: self.drafts.iter().map(|d| d.delta.clone()).collect(),
            rank: None,
        }
    }
}

fn split_groups(rng: &mut ChaCha8Rng, total: usize, max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut left = total;
    while left > 0 {
        let take = rng.gen_range(1..=left.min(max));
        out.push(take);
        left -= take;
    }
    out
}

/// Phase-A description of a non-kernel group.
enum GroupPlan {
    F { delta: Ordinal, zeta: Ordinal, len: usize, tower_over: Option<usize> },
    D { delta: Ordinal, len: usize },
    L { zeta: Ordinal, base: bool, plus: usize },
    M { delta: Ordinal, len: usize },
}

/// Generates a certificate of (approximately) the requested shape,
/// retrying with fresh draws until the result passes the full certificate
/// validator.
pub fn generate_certificate(
    tree: &IntervalTree,
    shape: &Shape,
    seed: u64,
) -> Result<Certificate, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = sample_pool(tree);
    let kp_pool: Vec<Ordinal> =
        pool.iter().filter(|x| cf_is(x, CardinalAtom::KappaPlus)).cloned().collect();
    let base_pool: Vec<Ordinal> = pool
        .iter()
        .filter(|x| cf_is(x, CardinalAtom::Kappa) || cf_is(x, CardinalAtom::KappaPlus))
        .cloned()
        .collect();
    if kp_pool.is_empty() {
        return Err(Error::GenerationFailed(format!(
            "no kappa-plus-cofinal ordinals below {}",
            tree.delta()
        )));
    }
    let mut last_report = String::new();
    for attempt in 0..60 {
        match try_generate(tree, shape, &kp_pool, &base_pool, &mut rng) {
            Ok(cert) => {
                let report = validate_certificate(&cert, tree);
                if report.is_valid() {
                    return Ok(cert);
                }
                last_report = format!("attempt {attempt}: {report}");
            }
            Err(e) => last_report = format!("attempt {attempt}: {e}"),
        }
    }
    Err(Error::GenerationFailed(last_report))
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

fn try_generate(
    tree: &IntervalTree,
    shape: &Shape,
    kp_pool: &[Ordinal],
    base_pool: &[Ordinal],
    rng: &mut ChaCha8Rng,
) -> Result<Certificate, Error> {
    let mut b = Builder::new();
    let root = b.add_kernel(BlockId::S, Ordinal::zero(), None);

    // Phase A: group plans.
    let mut plans: Vec<GroupPlan> = Vec::new();
    for len in split_groups(rng, shape.d, 3) {
        plans.push(GroupPlan::D { delta: pick(rng, kp_pool).clone(), len });
    }
    let d_group_ids: Vec<usize> = (0..plans.len()).collect();
    for len in split_groups(rng, shape.f, 3) {
        // half the time, grow the F block out of a D group's delta
        let tower = if !d_group_ids.is_empty() && rng.gen_bool(0.5) {
            let over = d_group_ids[rng.gen_range(0..d_group_ids.len())];
            let GroupPlan::D { delta: d_delta, .. } = &plans[over] else { unreachable!() };
            let bigger: Vec<&Ordinal> = kp_pool.iter().filter(|x| *x > d_delta).collect();
            bigger.first().map(|big| (over, d_delta.clone(), (**big).clone()))
        } else {
            None
        };
        match tower {
            Some((over, zeta, delta)) => {
                plans.push(GroupPlan::F { delta, zeta, len, tower_over: Some(over) });
            }
            None => {
                let delta = pick(rng, kp_pool).clone();
                let smaller: Vec<&Ordinal> = base_pool.iter().filter(|x| *x < &delta).collect();
                if smaller.is_empty() {
                    return Err(Error::GenerationFailed(format!(
                        "no block base below {delta}"
                    )));
                }
                let zeta = (*pick(rng, &smaller)).clone();
                plans.push(GroupPlan::F { delta, zeta, len, tower_over: None });
            }
        }
    }
    {
        // L blocks: distribute base and plus indices over a few blocks
        let mut l0 = shape.l0;
        let mut lp = shape.l_plus;
        while l0 + lp > 0 {
            let base = l0 > 0;
            let plus = if lp > 0 { rng.gen_range(if base { 0 } else { 1 }..=lp.min(2)) } else { 0 };
            plans.push(GroupPlan::L { zeta: pick(rng, base_pool).clone(), base, plus });
            l0 -= usize::from(base);
            lp -= plus;
        }
    }
    for len in split_groups(rng, shape.m, 3) {
        plans.push(GroupPlan::M { delta: pick(rng, kp_pool).clone(), len });
    }

    // Phase B needs the windows, which depend only on deltas and bases.
    let mut z0: BTreeSet<Ordinal> = BTreeSet::new();
    let mut window_deltas: BTreeSet<Ordinal> = BTreeSet::new();
    z0.insert(Ordinal::zero());
    for plan in &plans {
        match plan {
            GroupPlan::F { delta, zeta, .. } => {
                z0.insert(delta.clone());
                z0.insert(zeta.clone());
                window_deltas.insert(delta.clone());
            }
            GroupPlan::D { delta, .. } | GroupPlan::M { delta, .. } => {
                z0.insert(delta.clone());
                window_deltas.insert(delta.clone());
            }
            GroupPlan::L { zeta, .. } => {
                z0.insert(zeta.clone());
                window_deltas.insert(zeta.clone());
            }
        }
    }
    // extra kernel singletons also place their π into Z0
    let extra_kernel: Vec<Ordinal> = (1..shape.kernel)
        .map(|_| pick(rng, base_pool).clone())
        .collect();
    for v in &extra_kernel {
        z0.insert(v.clone());
    }
    let thin = thinning_parts(
        z0,
        &window_deltas.iter().cloned().collect::<Vec<_>>(),
        tree,
    )?;

    for v in extra_kernel {
        b.add_kernel(BlockId::S, v, Some(root));
    }

    // Phase B: materialise points on the ladder tails.
    let mut tower_tops: BTreeMap<usize, usize> = BTreeMap::new();
    for (plan_id, plan) in plans.iter().enumerate() {
        match plan {
            GroupPlan::D { delta, len } => {
                let entry = thin.gamma(delta).expect("window for D delta");
                let (_, big_j) = tree.limit_interval(delta)?;
                let eset = ESet::of(&big_j);
                let mut parent = if rng.gen_bool(0.85) { Some(root) } else { None };
                let base = entry.xi.add(&Ordinal::kappa());
                let mut off = 0u64;
                for t in 0..*len {
                    off += rng.gen_range(1..=2);
                    let extra = rng.gen_range(1..=2);
                    let pi_p = eset.index(&base.add(&Ordinal::from_nat(off)))?;
                    let pi_q = eset.index(&base.add(&Ordinal::from_nat(off + extra)))?;
                    // an occasional off-ladder singleton
                    let bump = if *len == 1 && rng.gen_bool(0.3) {
                        Ordinal::from_nat(rng.gen_range(1..=3))
                    } else {
                        Ordinal::zero()
                    };
                    let idx = b.add_twins(
                        IndexClass::D,
                        delta.clone(),
                        (BlockId::S, pi_p.add(&bump)),
                        (BlockId::S, pi_q.add(&bump)),
                        parent,
                    );
                    parent = Some(idx);
                    if t + 1 == *len {
                        tower_tops.insert(plan_id, idx);
                    }
                    off += extra;
                }
            }
            GroupPlan::F { delta, zeta, len, tower_over } => {
                let entry = thin.gamma(delta).expect("window for F delta");
                let (_, big_j) = tree.limit_interval(delta)?;
                let eset = ESet::of(&big_j);
                let eta: Ordinal = pick(rng, &["0", "1", "3", "w", "w1"]).parse().unwrap();
                let block = BlockId::pair(zeta.clone(), eta);
                let mut parent = match tower_over {
                    Some(over) => {
                        let d_top = tower_tops.get(over).copied();
                        Some(b.add_kernel(block.clone(), zeta.clone(), d_top))
                    }
                    None => {
                        if rng.gen_bool(0.5) {
                            // kernel base of the block, directly over the root
                            Some(b.add_kernel(block.clone(), zeta.clone(), Some(root)))
                        } else if rng.gen_bool(0.7) {
                            Some(root)
                        } else {
                            None
                        }
                    }
                };
                let base = entry.xi.add(&Ordinal::kappa());
                let mut off = 0u64;
                for _ in 0..*len {
                    off += rng.gen_range(1..=2);
                    let extra = rng.gen_range(0..=2);
                    let pi_p = eset.index(&base.add(&Ordinal::from_nat(off)))?;
                    let pi_q = eset.index(&base.add(&Ordinal::from_nat(off + extra)))?;
                    let bump = if *len == 1 && rng.gen_bool(0.3) {
                        Ordinal::from_nat(rng.gen_range(1..=3))
                    } else {
                        Ordinal::zero()
                    };
                    let idx = b.add_twins(
                        IndexClass::F,
                        delta.clone(),
                        (block.clone(), pi_p.add(&bump)),
                        (block.clone(), pi_q.add(&bump)),
                        parent,
                    );
                    parent = Some(idx);
                    off += extra;
                }
            }
            GroupPlan::L { zeta, base, plus } => {
                let entry = thin.gamma(zeta).expect("window for L zeta");
                let (eta_p, eta_q) = match entry.sigma {
                    Sigma::One => {
                        let a = rng.gen_range(0..3u64);
                        (Ordinal::from_nat(a), Ordinal::from_nat(a + 1 + rng.gen_range(0..2)))
                    }
                    Sigma::Two => {
                        let floor = entry.xi.add(&Ordinal::kappa());
                        let a = rng.gen_range(0..3u64);
                        (
                            floor.add(&Ordinal::from_nat(a)),
                            floor.add(&Ordinal::from_nat(a + 1 + rng.gen_range(0..2))),
                        )
                    }
                };
                let block_p = BlockId::pair(zeta.clone(), eta_p);
                let block_q = BlockId::pair(zeta.clone(), eta_q);
                let mut parent = if rng.gen_bool(0.8) { Some(root) } else { None };
                if *base {
                    let idx = b.add_twins(
                        IndexClass::L,
                        zeta.clone(),
                        (block_p.clone(), zeta.clone()),
                        (block_q.clone(), zeta.clone()),
                        parent,
                    );
                    parent = Some(idx);
                }
                let shift = rng.gen_range(0..2u64);
                for t in 0..*plus {
                    let off = Ordinal::from_nat(t as u64 + 1);
                    let idx = b.add_twins(
                        IndexClass::L,
                        zeta.clone(),
                        (block_p.clone(), zeta.add(&off)),
                        (block_q.clone(), zeta.add(&off).add(&Ordinal::from_nat(shift))),
                        parent,
                    );
                    parent = Some(idx);
                }
            }
            GroupPlan::M { delta, len } => {
                let entry = thin.gamma(delta).expect("window for M delta");
                let (_, big_j) = tree.limit_interval(delta)?;
                let eset = ESet::of(&big_j);
                let kappa = Ordinal::kappa();
                let zeta_p = eset.index(&entry.xi.add(&kappa.add(&kappa)))?;
                let zeta_q = eset.index(&entry.xi.add(&kappa.add(&kappa).add(&kappa)))?;
                let eta: Ordinal = pick(rng, &["0", "2", "w"]).parse().unwrap();
                let block_p = BlockId::pair(zeta_p.clone(), eta.clone());
                let block_q = BlockId::pair(zeta_q.clone(), eta);
                let mut parent = if rng.gen_bool(0.8) { Some(root) } else { None };
                // the chain starts at the block bases and climbs by successors
                for t in 0..*len {
                    let (pi_p, pi_q) = if t == 0 {
                        (zeta_p.clone(), zeta_q.clone())
                    } else {
                        let off = Ordinal::from_nat(t as u64);
                        (zeta_p.add(&off), zeta_q.add(&off))
                    };
                    let idx = b.add_twins(
                        IndexClass::M,
                        delta.clone(),
                        (block_p.clone(), pi_p),
                        (block_q.clone(), pi_q),
                        parent,
                    );
                    parent = Some(idx);
                }
            }
        }
    }
    Ok(b.finish())
}

/// The catalogue of guaranteed-breaking certificate corruptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Swap the twins at a moving index so π decreases from p to q.
    SwapTwins,
    /// Replace a non-kernel δ by its successor, which has successor
    /// cofinality.
    DeltaSuccessor,
    /// Relabel an F or D index with the other class.
    ClassRelabel,
    /// Relabel a kernel index (other than the root) as D.
    KernelLeak,
    /// Drop a σ₂ L block index η below ξ + κ.
    EtaCut,
    /// Redirect h at a kernel index to a non-kernel slot.
    HRedirect,
    /// Remove one strict order pair from q only.
    OrderDrop,
    /// Overwrite one q infimum entry with a wrong value.
    InfCorrupt,
    /// Move a D point's π to 0, into the Z-closure and below its window.
    PiIntoZ,
}

pub const ALL_MUTATIONS: [Mutation; 9] = [
    Mutation::SwapTwins,
    Mutation::DeltaSuccessor,
    Mutation::ClassRelabel,
    Mutation::KernelLeak,
    Mutation::EtaCut,
    Mutation::HRedirect,
    Mutation::OrderDrop,
    Mutation::InfCorrupt,
    Mutation::PiIntoZ,
];

/// Applies the mutation when the certificate has a spot for it.
pub fn mutate(cert: &Certificate, kind: Mutation, rng: &mut ChaCha8Rng) -> Option<Certificate> {
    let mut out = cert.clone();
    let n = cert.p.len();
    let pick_where = |rng: &mut ChaCha8Rng, pred: &dyn Fn(usize) -> bool| -> Option<usize> {
        let hits: Vec<usize> = (0..n).filter(|&i| pred(i)).collect();
        if hits.is_empty() {
            None
        } else {
            Some(hits[rng.gen_range(0..hits.len())])
        }
    };
    match kind {
        Mutation::SwapTwins => {
            let i = pick_where(rng, &|i| {
                !matches!(cert.classes[i], IndexClass::K)
                    && cert.p.point(i).pi() < cert.q.point(cert.h[i]).pi()
            })?;
            let (pp, qp) = (cert.p.point(i).clone(), cert.q.point(cert.h[i]).clone());
            out.p = replace_point(&cert.p, i, qp);
            out.q = replace_point(&cert.q, cert.h[i], pp);
            Some(out)
        }
        Mutation::DeltaSuccessor => {
            let i = pick_where(rng, &|i| {
                matches!(cert.classes[i], IndexClass::F | IndexClass::D | IndexClass::M)
            })?;
            out.deltas[i] = cert.deltas[i].succ();
            Some(out)
        }
        Mutation::ClassRelabel => {
            let i = pick_where(rng, &|i| {
                matches!(cert.classes[i], IndexClass::F | IndexClass::D)
            })?;
            out.classes[i] = match cert.classes[i] {
                IndexClass::F => IndexClass::D,
                _ => IndexClass::F,
            };
            Some(out)
        }
        Mutation::KernelLeak => {
            let i = pick_where(rng, &|i| {
                cert.classes[i] == IndexClass::K && !cert.p.point(i).pi().is_zero()
            })?;
            out.classes[i] = IndexClass::D;
            Some(out)
        }
        Mutation::EtaCut => {
            let i = pick_where(rng, &|i| {
                cert.classes[i] == IndexClass::L
                    && matches!(cert.p.point(i).pi_block(), BlockId::Pair { eta, .. } if !eta.below_kappa())
            })?;
            let BlockId::Pair { zeta, .. } = cert.p.point(i).pi_block().clone() else {
                return None;
            };
            let mut pt = cert.p.point(i).clone();
            pt.block = BlockId::pair(zeta, Ordinal::zero());
            out.p = replace_point(&cert.p, i, pt);
            Some(out)
        }
        Mutation::HRedirect => {
            let i = pick_where(rng, &|i| cert.classes[i] == IndexClass::K)?;
            let j = pick_where(rng, &|j| cert.classes[j] != IndexClass::K)?;
            out.h.swap(i, j);
            Some(out)
        }
        Mutation::OrderDrop => {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && cert.q.lt(a, b))
                .collect();
            if pairs.is_empty() {
                return None;
            }
            let drop = pairs[rng.gen_range(0..pairs.len())];
            let keep: Vec<(usize, usize)> =
                pairs.into_iter().filter(|&p| p != drop).collect();
            out.q = Condition::new(
                cert.q.points().to_vec(),
                &keep,
                cert.q.inf_map().clone(),
            );
            Some(out)
        }
        Mutation::InfCorrupt => {
            let mut inf = cert.q.inf_map().clone();
            let keys: Vec<(usize, usize)> = inf.keys().copied().collect();
            if keys.is_empty() {
                return None;
            }
            let key = keys[rng.gen_range(0..keys.len())];
            let wrong = match inf[&key] {
                Some(_) => None,
                None => Some(key.1),
            };
            inf.insert(key, wrong);
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && cert.q.lt(a, b))
                .collect();
            out.q = Condition::new(cert.q.points().to_vec(), &pairs, inf);
            Some(out)
        }
        Mutation::PiIntoZ => {
            let i = pick_where(rng, &|i| cert.classes[i] == IndexClass::D)?;
            let mut pt = cert.p.point(i).clone();
            pt.alpha = Ordinal::zero();
            out.p = replace_point(&cert.p, i, pt);
            Some(out)
        }
    }
}

fn replace_point(c: &Condition, i: usize, pt: Point) -> Condition {
    let mut points = c.points().to_vec();
    points[i] = pt;
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && c.lt(a, b))
        .collect();
    Condition::new(points, &pairs, c.inf_map().clone())
}

/// Outcome of a mutation campaign.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct MutationReport {
    pub trials: usize,
    pub detected: usize,
    pub survivors: Vec<String>,
}

/// Runs `trials` single-field corruptions against fresh certificates and
/// counts how many are caught by the certificate validator or, failing
/// that, by amalgamation and its verifier.
pub fn mutation_suite(
    tree: &IntervalTree,
    shape: &Shape,
    trials: usize,
    seed: u64,
) -> Result<MutationReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d75_7461);
    let mut report = MutationReport::default();
    let mut attempt = 0u64;
    while report.trials < trials {
        attempt += 1;
        if attempt > trials as u64 * 20 {
            return Err(Error::GenerationFailed(String::from(
                "mutation suite could not fill its trial budget",
            )));
        }
        let cert = generate_certificate(tree, shape, seed.wrapping_add(attempt))?;
        let kind = ALL_MUTATIONS[rng.gen_range(0..ALL_MUTATIONS.len())];
        let Some(bad) = mutate(&cert, kind, &mut rng) else {
            continue;
        };
        report.trials += 1;
        let caught = if !validate_certificate(&bad, tree).is_valid() {
            true
        } else {
            match super::amalgamate(&bad, tree) {
                Err(_) => true,
                Ok(trace) => !super::verify_amalgam(&bad, &trace, tree).is_valid(),
            }
        };
        if caught {
            report.detected += 1;
        } else {
            report.survivors.push(format!("{kind:?} survived on seed {}", seed.wrapping_add(attempt)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{amalgamate, verify_amalgam};

    fn tree() -> IntervalTree {
        IntervalTree::new("w2^2 + 1".parse().unwrap()).unwrap()
    }

    #[test]
    fn pool_has_both_cofinalities() {
        let t = tree();
        let pool = sample_pool(&t);
        assert!(pool.iter().any(|x| cf_is(x, CardinalAtom::KappaPlus)));
        assert!(pool.iter().any(|x| cf_is(x, CardinalAtom::Kappa)));
    }

    #[test]
    fn kernel_only_shape() {
        let t = tree();
        let cert = generate_certificate(&t, &Shape::kernel_only(3), 7).unwrap();
        assert!(cert.non_kernel().is_empty());
        let trace = amalgamate(&cert, &t).unwrap();
        let report = verify_amalgam(&cert, &trace, &t);
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn covering_shape_generates_and_verifies() {
        let t = tree();
        let cert = generate_certificate(&t, &Shape::covering(), 42).unwrap();
        for class in [IndexClass::F, IndexClass::L, IndexClass::D, IndexClass::M] {
            assert!(
                cert.classes.iter().any(|c| *c == class),
                "missing class {class}"
            );
        }
        assert!(!cert.l_plus().is_empty(), "missing L-plus index");
        let trace = amalgamate(&cert, &t).unwrap();
        let report = verify_amalgam(&cert, &trace, &t);
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn mutations_are_detected() {
        let t = tree();
        let report = mutation_suite(&t, &Shape::covering(), 12, 5).unwrap();
        assert_eq!(report.trials, 12);
        assert_eq!(report.detected, 12, "survivors: {:?}", report.survivors);
    }
}
