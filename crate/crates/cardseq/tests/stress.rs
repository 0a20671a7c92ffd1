// quick stress: many seeds, varied shapes and deltas
use cardseq::amalgam::generate::{generate_certificate, Shape};
use cardseq::amalgam::{amalgamate, validate_certificate, verify_amalgam};
use cardseq::IntervalTree;

#[test]
fn stress_many_seeds() {
    let deltas = ["w2^2 + 1", "w2^2*2 + 1", "w2*w1*2 + 1", "w2^2 + w2*3 + 1", "w2^2"];
    let shapes = [
        Shape::covering(),
        Shape { kernel: 1, f: 3, l0: 0, l_plus: 2, d: 0, m: 0 },
        Shape { kernel: 2, f: 0, l0: 2, l_plus: 2, d: 3, m: 0 },
        Shape { kernel: 1, f: 1, l0: 1, l_plus: 1, d: 1, m: 3 },
        Shape::kernel_only(4),
    ];
    let mut failures = vec![];
    for (di, d) in deltas.iter().enumerate() {
        let tree = IntervalTree::new(d.parse().unwrap()).unwrap();
        for (si, shape) in shapes.iter().enumerate() {
            for seed in 0..8u64 {
                let seed = seed + 1000 * di as u64 + 100 * si as u64;
                match generate_certificate(&tree, shape, seed) {
                    Ok(cert) => {
                        let vr = validate_certificate(&cert, &tree);
                        if !vr.is_valid() { failures.push(format!("delta {d} shape {si} seed {seed}: cert invalid: {vr}")); continue; }
                        match amalgamate(&cert, &tree) {
                            Ok(trace) => {
                                let rep = verify_amalgam(&cert, &trace, &tree);
                                if !rep.is_valid() { failures.push(format!("delta {d} shape {si} seed {seed}: verify: {rep}")); }
                            }
                            Err(e) => failures.push(format!("delta {d} shape {si} seed {seed}: amalgamate: {e}")),
                        }
                    }
                    Err(e) => failures.push(format!("delta {d} shape {si} seed {seed}: generate: {e}")),
                }
            }
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n---\n"));
}
