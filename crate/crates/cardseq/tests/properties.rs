//! Property-based invariants, each checked against an independent oracle:
//! surrogate Cantor-normal-form arithmetic for the ordinal operations, the
//! fully materialised finite tree for intervals and orbits, and the
//! direct-definition test for sequence classes.

use proptest::prelude::*;

use cardseq::oracle::{self, surrogate, FiniteTree};
use cardseq::orbits::basic_orbit;
use cardseq::ordinal::{Cofinality, Exps, Monomial, Ordinal};
use cardseq::sequence::{CardinalSequence, SymbolicCardinal};
use cardseq::space::{isolating_intervals, Point};
use cardseq::{IntervalTree, OrdinalSet};

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn arb_exps() -> impl Strategy<Value = Exps> {
    (0u32..3, 0u32..3, 0u32..3).prop_map(|(e2, e1, e0)| Exps { e2, e1, e0 })
}

fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    proptest::collection::vec((arb_exps(), 1u64..4), 0..4).prop_map(|mut monos| {
        monos.sort_by(|a, b| b.0.cmp(&a.0));
        monos.dedup_by_key(|m| m.0);
        Ordinal::from_monomials(
            monos.into_iter().map(|(exps, coeff)| Monomial { exps, coeff }).collect(),
        )
        .expect("sorted distinct exponents are normal")
    })
}

proptest! {
    /// Arithmetic agrees with the textbook surrogate implementation.
    #[test]
    fn arithmetic_matches_surrogate(a in arb_ordinal(), b in arb_ordinal()) {
        let (sa, sb) = (oracle::to_surrogate(&a), oracle::to_surrogate(&b));
        prop_assert_eq!(a.cmp(&b), surrogate::cmp(&sa, &sb));
        prop_assert_eq!(oracle::to_surrogate(&a.add(&b)), surrogate::add(&sa, &sb));
        prop_assert_eq!(
            a.sub_left(&b).ok().map(|x| oracle::to_surrogate(&x)),
            surrogate::sub_left(&sa, &sb)
        );
    }

    #[test]
    fn addition_laws(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
        // associativity
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        // left cancellation through sub_left
        let d = a.add(&b);
        prop_assert_eq!(a.add(&d.sub_left(&a).unwrap()), d);
        // strict monotonicity in the right argument
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
        }
        // normal form survives round trips through text and JSON
        let txt = a.to_string();
        prop_assert_eq!(&txt.parse::<Ordinal>().unwrap(), &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Ordinal>(&json).unwrap(), &a);
    }

    /// Ladders are strictly increasing, continuous at limit indices, and
    /// cofinal; the index order type is the cofinality.
    #[test]
    fn ladder_laws(b in arb_ordinal().prop_filter("limit", |x| x.is_limit())) {
        let ladder = b.ladder().unwrap();
        match b.cofinality() {
            Cofinality::Cof(atom) => prop_assert_eq!(ladder.length(), atom),
            _ => prop_assert!(false, "limit ordinal with non-limit cofinality"),
        }
        let idx: Vec<Ordinal> =
            ["0", "1", "2", "w", "w + 1", "w*2", "w*3"].iter().map(|s| o(s)).collect();
        let mut prev: Option<Ordinal> = None;
        for nu in idx.iter().filter(|nu| ladder.index_in_range(nu)) {
            let v = ladder.value(nu).unwrap();
            prop_assert!(v < b);
            prop_assert_eq!(ladder.index_of(&v), Some(nu.clone()));
            if let Some(p) = prev {
                prop_assert!(p < v);
            }
            prev = Some(v);
        }
        // values at limit indices are limits and dominate the earlier tail
        for lim in ["w", "w*2"] {
            let lim = o(lim);
            if !ladder.index_in_range(&lim) {
                continue;
            }
            let at_lim = ladder.value(&lim).unwrap();
            prop_assert!(at_lim.is_limit());
            for k in 0..4u64 {
                prop_assert!(ladder.value(&Ordinal::from_nat(k)).unwrap() < at_lim);
            }
        }
        // sup-cofinal: every sample below b is below some ladder value
        for probe in ["1", "w", "w1", "w2", "w2*w1 + 3"] {
            let probe = o(probe);
            if probe >= b {
                continue;
            }
            let above = match ladder.floor_index(&probe) {
                None => ladder.value(&o("0")).unwrap(),
                Some((m, _)) => {
                    let next = m.succ();
                    prop_assert!(ladder.index_in_range(&next));
                    ladder.value(&next).unwrap()
                }
            };
            prop_assert!(above > probe);
        }
    }

    /// Partition law and nesting over the worked tree.
    #[test]
    fn partition_and_nesting(alpha in arb_ordinal()) {
        let tree = IntervalTree::new(o("w2^2 + 1")).unwrap();
        prop_assume!(&alpha < tree.delta());
        let mut prev = tree.root();
        for n in 1..6 {
            let cur = tree.locate(&alpha, n).unwrap();
            prop_assert!(cur.contains(&alpha));
            prop_assert!(prev.bot() <= cur.bot() && cur.top() <= prev.top());
            prev = cur;
        }
        let n = tree.first_level(&alpha).unwrap();
        let at_n = tree.locate(&alpha, n).unwrap();
        prop_assert_eq!(at_n.bot(), &alpha);
        if n > 0 {
            prop_assert!(tree.locate(&alpha, n - 1).unwrap().bot() != &alpha);
        }
    }

    /// Limit-interval bounds: n(ζ)-1 <= j(ζ) <= n(ζ), with equality at
    /// cofinality κ⁺; ζ is a limit point of E(J(ζ)).
    #[test]
    fn limit_interval_bounds(zeta in arb_ordinal().prop_filter("limit", |x| x.is_limit())) {
        let tree = IntervalTree::new(o("w2^2 + 1")).unwrap();
        prop_assume!(&zeta < tree.delta());
        let n = tree.first_level(&zeta).unwrap();
        let (j, big_j) = tree.limit_interval(&zeta).unwrap();
        prop_assert!(j + 1 >= n && j <= n);
        if zeta.cofinality() == Cofinality::Cof(cardseq::CardinalAtom::KappaPlus) {
            prop_assert_eq!(j, n);
        }
        // ζ is a limit point of E(J): E-elements below ζ get arbitrarily close
        let eset = OrdinalSet::e_set(big_j);
        for probe in ["1", "w2", "w2*w1"] {
            let probe = o(probe);
            if probe < zeta {
                let up = eset.first_at_least(&probe);
                prop_assert!(up.is_some() && up.unwrap() <= zeta);
            }
        }
    }

    /// Orbit membership and size structure.
    #[test]
    fn orbit_laws(zeta in arb_ordinal()) {
        let tree = IntervalTree::new(o("w2^2 + 1")).unwrap();
        prop_assume!(&zeta < tree.delta() && !zeta.is_zero());
        let orbit = basic_orbit(&tree, &zeta).unwrap();
        prop_assert!(orbit.card_at_most_kappa());
        for x in orbit.enumerate(12) {
            prop_assert!(x < zeta);
        }
        if zeta.cofinality().is_at_least_kappa() {
            let ext = cardseq::orbits::extended_orbit(&tree, &zeta).unwrap();
            for x in orbit.enumerate(12) {
                prop_assert!(ext.member(&x));
            }
        }
    }

    /// For finite δ the symbolic tree and orbits agree exactly with the
    /// materialised ones, and isolating-interval scans are complete.
    #[test]
    fn finite_delta_against_brute_force(delta in 2u64..40, alpha in 0u64..40, beta in 0u64..40) {
        prop_assume!(alpha < delta && beta < delta);
        let brute = FiniteTree::new(delta);
        let tree = IntervalTree::new(Ordinal::from_nat(delta)).unwrap();
        let a = Ordinal::from_nat(alpha);
        prop_assert_eq!(tree.first_level(&a).unwrap(), brute.first_level(alpha));
        for n in 0..6 {
            let sym = tree.locate(&a, n).unwrap();
            let (lo, hi) = brute.locate(alpha, n);
            prop_assert_eq!(sym.bot(), &Ordinal::from_nat(lo));
            prop_assert_eq!(sym.top(), &Ordinal::from_nat(hi));
        }
        let sym_orbit = basic_orbit(&tree, &a).unwrap();
        let brute_orbit = brute.basic_orbit(alpha);
        for x in 0..delta {
            prop_assert_eq!(sym_orbit.member(&Ordinal::from_nat(x)), brute_orbit.contains(&x));
        }
        if alpha < beta {
            let x = Point::s(a.clone(), 0);
            let y = Point::s(Ordinal::from_nat(beta), 1);
            let got: Vec<(u64, u64)> = isolating_intervals(&tree, &x, &y)
                .unwrap()
                .into_iter()
                .map(|i| (i.bot().as_nat().unwrap(), i.top().as_nat().unwrap()))
                .collect();
            let want = brute.isolating(alpha, beta);
            prop_assert_eq!(got.iter().copied().collect::<std::collections::BTreeSet<_>>(), want);
        }
    }
}

fn arb_sequence() -> impl Strategy<Value = CardinalSequence> {
    let value = proptest::sample::select(vec![
        SymbolicCardinal::Omega,
        SymbolicCardinal::Omega1,
        SymbolicCardinal::Omega2,
    ]);
    let length = proptest::sample::select(vec![
        o("1"),
        o("3"),
        o("w"),
        o("w1"),
        o("w1*2"),
        o("w2"),
        o("w1*w"),
    ]);
    proptest::collection::vec((value, length), 1..6)
        .prop_map(CardinalSequence::from_runs)
        .prop_filter("nonempty", |s| !s.is_empty())
}

proptest! {
    /// `in_d` agrees with the direct-definition oracle.
    #[test]
    fn d_membership_matches_oracle(f in arb_sequence()) {
        for lambda in [SymbolicCardinal::Omega, SymbolicCardinal::Omega1, SymbolicCardinal::Omega2] {
            prop_assert_eq!(f.in_d(lambda).ok(), oracle::in_d_direct(&f, lambda).ok());
        }
    }

    /// Decomposition existence matches the exhaustive direct search, and
    /// returned witnesses re-validate.
    #[test]
    fn decomposition_matches_oracle(f in arb_sequence()) {
        let got = f.decompose();
        prop_assert_eq!(got.is_some(), oracle::decompose_exists_direct(&f));
        if let Some(pieces) = got {
            let mut glued = CardinalSequence::empty();
            let mut prev: Option<SymbolicCardinal> = None;
            for (lambda, piece) in &pieces {
                prop_assert_eq!(piece.in_d(*lambda), Ok(true));
                if let Some(p) = prev {
                    prop_assert!(*lambda < p);
                }
                prev = Some(*lambda);
                glued = glued.concat(piece);
            }
            prop_assert_eq!(glued, f);
        }
    }

    /// Concatenation adds totals ordinally.
    #[test]
    fn concat_totals(f in arb_sequence(), g in arb_sequence()) {
        prop_assert_eq!(f.concat(&g).total(), f.total().add(&g.total()));
    }
}

#[test]
fn finite_trees_agree_up_to_64() {
    for delta in 2u64..=64 {
        let brute = FiniteTree::new(delta);
        let tree = IntervalTree::new(Ordinal::from_nat(delta)).unwrap();
        for alpha in 0..delta {
            let a = Ordinal::from_nat(alpha);
            assert_eq!(tree.first_level(&a).unwrap(), brute.first_level(alpha), "n({alpha}) over {delta}");
        }
    }
}
