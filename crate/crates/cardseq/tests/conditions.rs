//! Fuzz-style integration tests for the condition validator, the infimum
//! oracle, point addition, and the finite-space laws.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cardseq::amalgam::generate::{generate_certificate, Shape};
use cardseq::condition::{BruteInf, Condition};
use cardseq::finspace::FinSpace;
use cardseq::oracle::FiniteTree;
use cardseq::ordinal::Ordinal;
use cardseq::space::Point;
use cardseq::IntervalTree;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn example_tree() -> IntervalTree {
    IntervalTree::new(o("w2^2 + 1")).unwrap()
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

/// Valid conditions drawn from the certificate generator's p side.
fn fuzzed_condition(tree: &IntervalTree, seed: u64) -> Condition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = random_shape(&mut rng);
    generate_certificate(tree, &shape, seed).expect("generator converges").p
}

#[test]
fn fuzzed_infima_match_brute_force() {
    let tree = example_tree();
    for seed in 0..30 {
        let c = fuzzed_condition(&tree, seed);
        assert!(c.validate(&tree).is_valid());
        for ((i, j), brute) in c.brute_force_infima() {
            match c.inf_entry(i, j) {
                Some(None) => assert_eq!(brute, BruteInf::Empty, "seed {seed} pair ({i},{j})"),
                Some(Some(z)) => {
                    assert_eq!(brute, BruteInf::Greatest(z), "seed {seed} pair ({i},{j})")
                }
                None => panic!("seed {seed}: missing inf entry"),
            }
        }
    }
}

#[test]
fn fuzzed_point_addition_is_valid_and_exact() {
    let tree = example_tree();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut successes = 0;
    for seed in 0..40 {
        let c = fuzzed_condition(&tree, 1000 + seed);
        let x = rng.gen_range(0..c.len());
        if c.point(x).pi().is_zero() {
            continue;
        }
        // a value below π(x): either 0 or an orbit element of π(x)
        let alpha = if rng.gen_bool(0.5) {
            Ordinal::zero()
        } else {
            match cardseq::orbits::basic_orbit(&tree, c.point(x).pi()) {
                Ok(orbit) => orbit
                    .enumerate(4)
                    .into_iter()
                    .last()
                    .unwrap_or_else(Ordinal::zero),
                Err(_) => Ordinal::zero(),
            }
        };
        let Ok(added) = c.add_point_below(x, &alpha, &tree) else {
            continue;
        };
        successes += 1;
        let c2 = added.condition;
        let report = c2.validate(&tree);
        assert!(report.is_valid(), "seed {seed}: {report}");
        assert!(c2.extends(&c), "seed {seed}: extension broken");
        assert_eq!(c2.point(added.b).pi(), &alpha);
        // the contract: b ⪯ y iff x ⪯ y on the old points
        for y in 0..c.len() {
            assert_eq!(c2.lt(added.b, y), c.leq(x, y) && added.b != y, "seed {seed}, y {y}");
        }
        // (P6) witnesses of the old condition persist in the extension
        assert!(c2.check_claim_2_1(&tree).is_valid());
    }
    assert!(successes >= 25, "only {successes} point additions succeeded");
}

/// Random ground-block conditions over a finite δ, compared against the
/// materialised tree: the validator's isolating scans agree with the brute
/// enumeration over all intervals.
#[test]
fn finite_delta_witness_lists_match_brute_force() {
    let delta = 24u64;
    let tree = IntervalTree::new(Ordinal::from_nat(delta)).unwrap();
    let brute = FiniteTree::new(delta);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _case in 0..40 {
        // random chain built by repeated point addition keeps validity
        let top = rng.gen_range(1..delta);
        let mut c = Condition::new(
            vec![Point::s(Ordinal::from_nat(top), 0)],
            &[],
            BTreeMap::new(),
        );
        for _ in 0..rng.gen_range(0..3) {
            let x = rng.gen_range(0..c.len());
            let pi = c.point(x).pi().as_nat().unwrap();
            if pi == 0 {
                continue;
            }
            let alpha = Ordinal::from_nat(rng.gen_range(0..pi));
            if let Ok(add) = c.add_point_below(x, &alpha, &tree) {
                c = add.condition;
            }
        }
        let report = c.validate(&tree);
        assert!(report.is_valid(), "{report}");
        for i in 0..c.len() {
            for j in 0..c.len() {
                if i == j {
                    continue;
                }
                let (u, v) = (c.point(i).pi().as_nat().unwrap(), c.point(j).pi().as_nat().unwrap());
                if u >= v {
                    continue;
                }
                let got: std::collections::BTreeSet<(u64, u64)> =
                    cardseq::space::isolating_intervals(&tree, c.point(i), c.point(j))
                        .unwrap()
                        .into_iter()
                        .map(|l| (l.bot().as_nat().unwrap(), l.top().as_nat().unwrap()))
                        .collect();
                assert_eq!(got, brute.isolating(u, v));
            }
        }
    }
}

/// Disjoint unions sum Cantor–Bendixson levels pointwise on fuzzed posets,
/// and down-sets restrict levels to intersections.
#[test]
fn finspace_laws_on_fuzzed_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _case in 0..60 {
        let n = rng.gen_range(1..7usize);
        let mut pairs = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.3) {
                    pairs.push((i, j));
                }
            }
        }
        let a = FinSpace::new(n, &pairs).unwrap();
        let m = rng.gen_range(0..5usize);
        let b = FinSpace::antichain(m);
        let u = FinSpace::disjoint_union(&[a.clone(), b.clone()]);
        let (sa, sb, su) = (a.seq(), b.seq(), u.seq());
        for lvl in 0..su.len() {
            let expect = sa.get(lvl).copied().unwrap_or(0) + sb.get(lvl).copied().unwrap_or(0);
            assert_eq!(su[lvl], expect);
        }
        // random down-set: levels are intersections with ambient levels
        let seed_pt = rng.gen_range(0..n);
        let down: std::collections::BTreeSet<usize> = a.down_set(seed_pt).into_iter().collect();
        let (sub, map) = a.open_subspace(&down).unwrap();
        let ambient = a.cb_levels();
        for (lvl, members) in sub.cb_levels().iter().enumerate() {
            for &i in members {
                assert!(ambient[lvl].contains(&map[i]));
            }
        }
    }
}
