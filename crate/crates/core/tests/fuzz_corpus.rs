//! Replays the fuzz seed corpora through the same checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use twoq::circuit::parse_circuit;
use twoq::cli::parse_matrix;
use twoq::invariants::cnot_cost;

fn corpus(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn parse_circuit_seeds() {
    let mut parsed = 0;
    for (_, src) in corpus("parse_circuit") {
        if let Ok(c) = parse_circuit(&src) {
            assert!(c.matrix().is_finite());
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn parse_matrix_seeds() {
    let mut parsed = 0;
    for (_, src) in corpus("parse_matrix") {
        if let Ok(m) = parse_matrix(&src, 1e-8) {
            cnot_cost(&m).unwrap();
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn circuit_roundtrip_seeds() {
    for (name, src) in corpus("circuit_roundtrip") {
        let c = parse_circuit(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_circuit(&c.to_text()).unwrap(), c, "{name}");
    }
}
