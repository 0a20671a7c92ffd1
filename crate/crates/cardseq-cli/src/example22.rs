//! Golden self-check of the worked tree over δ = ω₂·ω₂ + 1: the four
//! displayed `E`-sets, the splitting levels, the limit intervals, and the
//! four orbit values. Exact match required; any mismatch fails the run.

use cardseq::orbits::{basic_orbit, extended_orbit};
use cardseq::ordinal::Ordinal;
use cardseq::{Interval, IntervalTree};

use crate::report::Report;

fn o(s: &str) -> Ordinal {
    s.parse().expect("literal ordinal")
}

/// The standard δ of the worked example.
pub fn standard_delta() -> Ordinal {
    o("w2^2 + 1")
}

/// Runs the golden checks. `perturb` is a test hook that offsets every
/// expected enumeration index by one, which must make the run fail.
pub fn run(delta: &Ordinal, perturb: bool) -> Report {
    let mut report = Report::default();
    let Ok(tree) = IntervalTree::new(delta.clone()) else {
        report.check("tree", false, "delta is not a valid tree root");
        return report;
    };
    if delta == &standard_delta() {
        golden(&tree, perturb, &mut report);
    } else {
        generic(&tree, &mut report);
    }
    report
}

fn e_at(tree: &IntervalTree, interval: &Interval, nu: &Ordinal, perturb: bool) -> Option<Ordinal> {
    let nu = if perturb { nu.succ() } else { nu.clone() };
    tree.e_index(interval, &nu).ok()
}

fn golden(tree: &IntervalTree, perturb: bool, report: &mut Report) {
    let root = tree.root();
    let i1 = Interval::new(o("0"), o("w2^2")).unwrap();

    // E([0,δ)) = {0, ω₂·ω₂}
    let fact1 = e_at(tree, &root, &o("0"), perturb) == Some(o("0"))
        && e_at(tree, &root, &o("1"), perturb) == Some(o("w2^2"))
        && tree.e_index(&root, &o("2")).is_err();
    report.check("E([0,delta)) = {0, w2*w2}", fact1, "");

    // E([0,ω₂·ω₂)) = {ω₂·ξ : ξ < ω₂}
    let mut fact2 = true;
    for xi in ["0", "1", "5", "w", "w1", "w1*2 + 3"] {
        let xi = o(xi);
        let value = e_at(tree, &i1, &xi, perturb);
        fact2 &= value == Some(scale_by_kappa_plus(&xi));
        fact2 &= tree.e_position(&i1, &scale_by_kappa_plus(&xi)) == Some(xi);
    }
    fact2 &= tree.e_position(&i1, &o("w2*3 + 1")).is_none();
    report.check("E([0,w2*w2)) = {w2*xi : xi < w2}", fact2, "");

    // E([ω₂·ξ, ω₂·(ξ+1))) is the whole interval
    let mut fact3 = true;
    for xi in ["3", "w1"] {
        let lo = scale_by_kappa_plus(&o(xi));
        let hi = lo.add(&o("w2"));
        let seg = Interval::new(lo.clone(), hi).unwrap();
        for nu in ["0", "1", "w + 4", "w1"] {
            let nu = o(nu);
            fact3 &= e_at(tree, &seg, &nu, perturb) == Some(lo.add(&nu));
        }
    }
    report.check("E([w2*xi, w2*(xi+1))) is everything", fact3, "");

    // E({ζ}) = {ζ}
    let singleton = Interval::new(o("w2^2"), o("w2^2 + 1")).unwrap();
    let fact4 = tree.e_index(&singleton, &o("0")) == Ok(o("w2^2"))
        && tree.e_index(&singleton, &o("1")).is_err();
    report.check("E({zeta}) = {zeta}", fact4, "");

    for (name, alpha, want) in [
        ("n(w2*w2) = 1", "w2^2", 1usize),
        ("n(w2*w1) = 2", "w2*w1", 2),
        ("n(w2*w1 + w) = 3", "w2*w1 + w", 3),
    ] {
        let got = tree.first_level(&o(alpha));
        report.check(name, got == Ok(want), format!("got {got:?}"));
    }

    let big_j = Interval::new(o("0"), o("w2^2")).unwrap();
    for (name, zeta) in [("j(w2*w2) = 1, J = [0, w2*w2)", "w2^2"), ("j(w2*w1) = 1, J = [0, w2*w2)", "w2*w1")] {
        match tree.limit_interval(&o(zeta)) {
            Ok((j, interval)) => {
                report.check(name, j == 1 && interval == big_j, format!("got j = {j}, J = {interval}"))
            }
            Err(e) => report.check(name, false, format!("{e}")),
        }
    }

    // o(ω₂·ω₂) = {0}
    match basic_orbit(tree, &o("w2^2")) {
        Ok(orbit) => {
            let ok = orbit.enumerate(4) == vec![o("0")] && !orbit.member(&o("w2"));
            report.check("o(w2*w2) = {0}", ok, "");
        }
        Err(e) => report.check("o(w2*w2) = {0}", false, format!("{e}")),
    }

    // ō(ω₂·ω₂) = {ω₂·ξ : ξ < ω₂}
    match extended_orbit(tree, &o("w2^2")) {
        Ok(orbit) => {
            let mut ok = orbit.enumerate(3) == vec![o("0"), o("w2"), o("w2*2")];
            for xi in ["5", "w", "w1", "w1*w"] {
                ok &= orbit.member(&scale_by_kappa_plus(&o(xi)));
            }
            ok &= !orbit.member(&o("w2*5 + 1")) && !orbit.member(&o("w2^2"));
            report.check("ext o(w2*w2) = {w2*xi : xi < w2}", ok, "");
        }
        Err(e) => report.check("ext o(w2*w2) = {w2*xi : xi < w2}", false, format!("{e}")),
    }

    // o(ω₂·ω₁) = ō(ω₂·ω₁) = {ω₂·ξ : ξ < ω₁}
    match (basic_orbit(tree, &o("w2*w1")), extended_orbit(tree, &o("w2*w1"))) {
        (Ok(basic), Ok(ext)) => {
            let mut ok = true;
            for xi in ["0", "1", "17", "w", "w*5 + 2"] {
                let v = scale_by_kappa_plus(&o(xi));
                ok &= basic.member(&v) && ext.member(&v);
            }
            for bad in ["w2*w1", "w2*w1 + w2", "1"] {
                ok &= !basic.member(&o(bad)) && !ext.member(&o(bad));
            }
            report.check("o(w2*w1) = ext o(w2*w1) = {w2*xi : xi < w1}", ok, "");
        }
        _ => report.check("o(w2*w1) = ext o(w2*w1) = {w2*xi : xi < w1}", false, "orbit failed"),
    }
}

/// ω₂ · ξ for the expectation side, built without the tree's enumeration.
fn scale_by_kappa_plus(xi: &Ordinal) -> Ordinal {
    let mut acc = Ordinal::zero();
    for m in xi.monomials() {
        let exps = m.exps;
        let mono = Ordinal::monomial(1 + exps.e2, exps.e1, exps.e0, m.coeff);
        acc = acc.add(&mono);
    }
    acc
}

/// For a nonstandard δ only the generic structural facts are checked; the
/// golden facts hold vacuously.
fn generic(tree: &IntervalTree, report: &mut Report) {
    let pool = cardseq::amalgam::generate::sample_pool(tree);
    let mut partition = true;
    let mut bounds = true;
    for alpha in pool.iter().take(12) {
        for n in 0..4 {
            if let (Ok(outer), Ok(inner)) = (tree.locate(alpha, n), tree.locate(alpha, n + 1)) {
                partition &= outer.contains(alpha) && inner.contains(alpha);
                partition &= outer.bot() <= inner.bot() && inner.top() <= outer.top();
            } else {
                partition = false;
            }
        }
        if alpha.is_limit() {
            match (tree.first_level(alpha), tree.limit_interval(alpha)) {
                (Ok(n), Ok((j, _))) => bounds &= j + 1 >= n && j <= n,
                _ => bounds = false,
            }
        }
    }
    report.check("partition and nesting on samples", partition, "");
    report.check("limit-interval bounds on samples", bounds, "");
}
