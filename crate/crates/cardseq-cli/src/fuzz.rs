//! Deterministic fuzz campaigns for conditions, amalgamation, sequences and
//! finite spaces, with greedy counterexample minimisation on failure.

use std::collections::BTreeMap;
use std::path::PathBuf;

use cardseq::amalgam::generate::{generate_certificate, mutation_suite, Shape};
use cardseq::amalgam::{amalgamate, validate_certificate, verify_amalgam, Certificate, IndexClass};
use cardseq::condition::{BruteInf, Condition};
use cardseq::finspace::{finite_d_analogue, toy_good_space, toy_plan, FinSpace};
use cardseq::oracle;
use cardseq::orbits::basic_orbit;
use cardseq::ordinal::Ordinal;
use cardseq::sequence::{CardinalSequence, SymbolicCardinal};
use cardseq::IntervalTree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FuzzKind {
    Condition,
    Amalgam,
    Sequence,
    Finspace,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzOutcome {
    pub kind: String,
    pub trials: usize,
    pub failures: usize,
    pub artifact: Option<PathBuf>,
}

pub struct FuzzParams {
    pub trials: usize,
    pub seed: u64,
    pub shape: Shape,
    pub out_dir: Option<PathBuf>,
}

fn random_shape(rng: &mut ChaCha8Rng) -> Shape {
    Shape {
        kernel: rng.gen_range(1..3),
        f: rng.gen_range(0..3),
        l0: rng.gen_range(0..2),
        l_plus: rng.gen_range(0..2),
        d: rng.gen_range(0..3),
        m: rng.gen_range(0..2),
    }
}

pub fn run(kind: FuzzKind, tree: &IntervalTree, params: &FuzzParams) -> (Report, FuzzOutcome) {
    match kind {
        FuzzKind::Condition => fuzz_conditions(tree, params),
        FuzzKind::Amalgam => fuzz_amalgam(tree, params),
        FuzzKind::Sequence => fuzz_sequences(params),
        FuzzKind::Finspace => fuzz_finspaces(params),
    }
}

/// Valid conditions from the generator, stressed through the validator, the
/// infimum oracle, the block-placement consequences, and point addition.
fn fuzz_conditions(tree: &IntervalTree, params: &FuzzParams) -> (Report, FuzzOutcome) {
    let mut report = Report::default();
    let mut failures = 0usize;
    let mut artifact = None;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for t in 0..params.trials {
        let seed = params.seed.wrapping_add(t as u64);
        let shape = random_shape(&mut rng);
        let cert = match generate_certificate(tree, &shape, seed) {
            Ok(c) => c,
            Err(e) => {
                failures += 1;
                report.check(format!("trial {t}"), false, format!("generation: {e}"));
                continue;
            }
        };
        let mut c = cert.p;
        // a few random point additions keep the condition valid
        for _ in 0..rng.gen_range(0..3) {
            let x = rng.gen_range(0..c.len());
            if c.point(x).pi().is_zero() {
                continue;
            }
            let alpha = if rng.gen_bool(0.5) {
                Ordinal::zero()
            } else {
                basic_orbit(tree, c.point(x).pi())
                    .ok()
                    .and_then(|orbit| orbit.enumerate(3).into_iter().last())
                    .unwrap_or_else(Ordinal::zero)
            };
            if let Ok(add) = c.add_point_below(x, &alpha, tree) {
                c = add.condition;
            }
        }
        let mut bad = Vec::new();
        let validation = c.validate(tree);
        if !validation.is_valid() {
            bad.push(format!("validator: {validation}"));
        }
        for ((i, j), brute) in c.brute_force_infima() {
            let ok = match c.inf_entry(i, j) {
                Some(None) => brute == BruteInf::Empty,
                Some(Some(z)) => brute == BruteInf::Greatest(z),
                None => false,
            };
            if !ok {
                bad.push(format!("infimum oracle disagrees on ({i}, {j})"));
            }
        }
        let claim = c.check_claim_2_1(tree);
        if !claim.is_valid() {
            bad.push(format!("block placement: {claim}"));
        }
        if !bad.is_empty() {
            failures += 1;
            report.check(format!("trial {t}"), false, bad.join("; "));
            if artifact.is_none() {
                artifact = save_condition_artifact(tree, &c, params, t);
            }
        }
    }
    report.check(
        "condition fuzz",
        failures == 0,
        format!("{} trials, {failures} failures", params.trials),
    );
    let outcome = FuzzOutcome {
        kind: "condition".into(),
        trials: params.trials,
        failures,
        artifact,
    };
    (report, outcome)
}

/// Certificates across shapes covering every class: generate, validate,
/// amalgamate, verify; plus the single-field corruption campaign.
fn fuzz_amalgam(tree: &IntervalTree, params: &FuzzParams) -> (Report, FuzzOutcome) {
    let mut report = Report::default();
    let mut failures = 0usize;
    let mut artifact = None;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0xa41);
    for t in 0..params.trials {
        let seed = params.seed.wrapping_add(t as u64);
        let shape = if t % 4 == 0 { params.shape } else { random_shape(&mut rng) };
        match run_one_certificate(tree, &shape, seed) {
            Ok(()) => {}
            Err(msg) => {
                failures += 1;
                report.check(format!("trial {t}"), false, msg.clone());
                if artifact.is_none() {
                    if let Ok(cert) = generate_certificate(tree, &shape, seed) {
                        let minimized = minimize_certificate(tree, cert);
                        artifact = save_certificate_artifact(tree, &minimized, params, t);
                    }
                }
            }
        }
    }
    report.check(
        "amalgam fuzz",
        failures == 0,
        format!("{} trials, {failures} failures", params.trials),
    );
    let outcome = FuzzOutcome {
        kind: "amalgam".into(),
        trials: params.trials,
        failures,
        artifact,
    };
    (report, outcome)
}

pub fn run_one_certificate(tree: &IntervalTree, shape: &Shape, seed: u64) -> Result<(), String> {
    let cert =
        generate_certificate(tree, shape, seed).map_err(|e| format!("generation: {e}"))?;
    let validation = validate_certificate(&cert, tree);
    if !validation.is_valid() {
        return Err(format!("certificate: {validation}"));
    }
    let trace = amalgamate(&cert, tree).map_err(|e| format!("amalgamation: {e}"))?;
    let verdict = verify_amalgam(&cert, &trace, tree);
    if !verdict.is_valid() {
        return Err(format!("verification: {verdict}"));
    }
    Ok(())
}

/// The corruption campaign behind `fuzz-amalgam --mutations`.
pub fn run_mutations(
    tree: &IntervalTree,
    shape: &Shape,
    mutations: usize,
    seed: u64,
) -> Report {
    let mut report = Report::default();
    match mutation_suite(tree, shape, mutations, seed) {
        Ok(m) => {
            let rate = if m.trials == 0 { 1.0 } else { m.detected as f64 / m.trials as f64 };
            report.check(
                "mutation detection",
                rate >= 0.95,
                format!("{}/{} detected", m.detected, m.trials),
            );
            for s in m.survivors {
                report.check("survivor", false, s);
            }
        }
        Err(e) => report.check("mutation detection", false, format!("{e}")),
    }
    report
}

fn fuzz_sequences(params: &FuzzParams) -> (Report, FuzzOutcome) {
    let mut report = Report::default();
    let mut failures = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x5e9);
    let values = [SymbolicCardinal::Omega, SymbolicCardinal::Omega1, SymbolicCardinal::Omega2];
    let lengths: Vec<Ordinal> = ["1", "3", "w", "w1", "w1*2", "w2", "w1*w"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for t in 0..params.trials {
        let runs: Vec<(SymbolicCardinal, Ordinal)> = (0..rng.gen_range(1..6))
            .map(|_| {
                (
                    values[rng.gen_range(0..values.len())],
                    lengths[rng.gen_range(0..lengths.len())].clone(),
                )
            })
            .collect();
        let f = CardinalSequence::from_runs(runs);
        if f.is_empty() {
            continue;
        }
        let mut bad = Vec::new();
        for lambda in values {
            if f.in_d(lambda).ok() != oracle::in_d_direct(&f, lambda).ok() {
                bad.push(format!("D_{lambda} membership"));
            }
        }
        if f.decompose().is_some() != oracle::decompose_exists_direct(&f) {
            bad.push("decomposition existence".into());
        }
        if !bad.is_empty() {
            failures += 1;
            report.check(format!("trial {t} ({f})"), false, bad.join("; "));
        }
    }
    report.check(
        "sequence fuzz",
        failures == 0,
        format!("{} trials, {failures} failures", params.trials),
    );
    (
        report.clone(),
        FuzzOutcome { kind: "sequence".into(), trials: params.trials, failures, artifact: None },
    )
}

fn fuzz_finspaces(params: &FuzzParams) -> (Report, FuzzOutcome) {
    let mut report = Report::default();
    let mut failures = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0xf15);
    for t in 0..params.trials {
        let mut bad = Vec::new();
        // union law on random posets
        let n = rng.gen_range(1..7usize);
        let mut pairs = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.3) {
                    pairs.push((i, j));
                }
            }
        }
        let a = FinSpace::new(n, &pairs).expect("acyclic by construction");
        let b = FinSpace::antichain(rng.gen_range(0..4));
        let u = FinSpace::disjoint_union(&[a.clone(), b.clone()]);
        let (sa, sb, su) = (a.seq(), b.seq(), u.seq());
        for lvl in 0..su.len() {
            if su[lvl] != sa.get(lvl).copied().unwrap_or(0) + sb.get(lvl).copied().unwrap_or(0) {
                bad.push("union law".to_string());
                break;
            }
        }
        // toy extraction against a random monotone target
        let heights = rng.gen_range(1..7usize);
        let (y, yz) = (rng.gen_range(1..3usize), rng.gen_range(3..6usize));
        let cut = rng.gen_range(1..=heights);
        let target: Vec<usize> =
            (0..heights).map(|lvl| if lvl < cut { y } else { yz }).collect();
        if finite_d_analogue(&target, (y, yz)) {
            let zetas: std::collections::BTreeSet<usize> =
                (cut < heights).then_some(cut).into_iter().collect();
            match (toy_plan(&target, (y, yz)), toy_good_space(heights, (y, yz), &zetas)) {
                (Ok(plan), Ok(toy)) => match toy.extract(&plan) {
                    Ok(z) => {
                        if z.seq() != target {
                            bad.push(format!("extraction got {:?} want {target:?}", z.seq()));
                        }
                    }
                    Err(e) => bad.push(format!("extraction: {e}")),
                },
                (Err(e), _) | (_, Err(e)) => bad.push(format!("toy setup: {e}")),
            }
        }
        if !bad.is_empty() {
            failures += 1;
            report.check(format!("trial {t}"), false, bad.join("; "));
        }
    }
    report.check(
        "finspace fuzz",
        failures == 0,
        format!("{} trials, {failures} failures", params.trials),
    );
    (
        report.clone(),
        FuzzOutcome { kind: "finspace".into(), trials: params.trials, failures, artifact: None },
    )
}

/// Greedy shrink: drop one index at a time while the certificate keeps
/// failing somewhere in validate → amalgamate → verify.
pub fn minimize_certificate(tree: &IntervalTree, mut cert: Certificate) -> Certificate {
    let failing = |c: &Certificate| -> bool {
        if !validate_certificate(c, tree).is_valid() {
            return true;
        }
        match amalgamate(c, tree) {
            Err(_) => true,
            Ok(trace) => !verify_amalgam(c, &trace, tree).is_valid(),
        }
    };
    if !failing(&cert) {
        return cert;
    }
    loop {
        let mut shrunk = None;
        for i in 0..cert.p.len() {
            if let Some(smaller) = drop_index(&cert, i) {
                if failing(&smaller) {
                    shrunk = Some(smaller);
                    break;
                }
            }
        }
        match shrunk {
            Some(s) => cert = s,
            None => return cert,
        }
    }
}

/// Removes one index from every component of a certificate, renumbering so
/// that `h` becomes the identity on the kept part. Infima pointing at the
/// dropped index become undefined; whether the shrunk certificate still
/// fails is judged by the caller.
fn drop_index(cert: &Certificate, drop: usize) -> Option<Certificate> {
    let n = cert.p.len();
    if n <= 1 {
        return None;
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
    let pos_of = |i: usize| keep.iter().position(|&k| k == i);
    let h_inv = |qi: usize| cert.h.iter().position(|&h| h == qi).expect("h is onto");
    let mut p_points = Vec::new();
    let mut q_points = Vec::new();
    let mut strict_p = Vec::new();
    let mut strict_q = Vec::new();
    let mut inf_p = BTreeMap::new();
    let mut inf_q = BTreeMap::new();
    for (a, &i) in keep.iter().enumerate() {
        p_points.push(cert.p.point(i).clone());
        q_points.push(cert.q.point(cert.h[i]).clone());
        for (b, &j) in keep.iter().enumerate() {
            if a != b {
                if cert.p.lt(i, j) {
                    strict_p.push((a, b));
                }
                if cert.q.lt(cert.h[i], cert.h[j]) {
                    strict_q.push((a, b));
                }
            }
            if a < b {
                inf_p.insert((a, b), cert.p.inf(i, j).and_then(pos_of));
                inf_q.insert(
                    (a, b),
                    cert.q.inf(cert.h[i], cert.h[j]).and_then(|z| pos_of(h_inv(z))),
                );
            }
        }
    }
    Some(Certificate {
        p: Condition::new(p_points, &strict_p, inf_p),
        q: Condition::new(q_points, &strict_q, inf_q),
        h: (0..keep.len()).collect(),
        classes: keep.iter().map(|&i| cert.classes[i]).collect(),
        deltas: keep.iter().map(|&i| cert.deltas[i].clone()).collect(),
        rank: None,
    })
}

fn save_condition_artifact(
    tree: &IntervalTree,
    c: &Condition,
    params: &FuzzParams,
    trial: usize,
) -> Option<PathBuf> {
    let dir = params.out_dir.clone()?;
    std::fs::create_dir_all(&dir).ok()?;
    let path = dir.join(format!("condition-failure-{trial}.json"));
    let file = crate::ConditionFile { delta: tree.delta().clone(), condition: c.clone() };
    crate::write_json(&path, &file).ok()?;
    Some(path)
}

fn save_certificate_artifact(
    tree: &IntervalTree,
    cert: &Certificate,
    params: &FuzzParams,
    trial: usize,
) -> Option<PathBuf> {
    let dir = params.out_dir.clone()?;
    std::fs::create_dir_all(&dir).ok()?;
    let path = dir.join(format!("certificate-failure-{trial}.json"));
    let file = crate::CertificateFile { delta: tree.delta().clone(), certificate: cert.clone() };
    crate::write_json(&path, &file).ok()?;
    Some(path)
}

/// Shapes that jointly cover every index class, used by the campaign
/// drivers.
pub fn covering_shapes() -> Vec<Shape> {
    vec![
        Shape::covering(),
        Shape { kernel: 1, f: 3, l0: 0, l_plus: 2, d: 0, m: 0 },
        Shape { kernel: 2, f: 0, l0: 2, l_plus: 1, d: 3, m: 0 },
        Shape { kernel: 1, f: 1, l0: 1, l_plus: 1, d: 1, m: 3 },
        Shape { kernel: 2, f: 2, l0: 1, l_plus: 2, d: 2, m: 1 },
    ]
}

/// Checks that a certificate mentions a class, for coverage assertions.
pub fn has_class(cert: &Certificate, class: IndexClass) -> bool {
    cert.classes.iter().any(|c| *c == class)
}
