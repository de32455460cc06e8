mod common;

use common::{fixture_pair, pinned_complexes, read_pins, PINS_PATH};
use ocoh::complex::{cohomology, cohomology_dense};

/// Recomputes the pins with the dense oracle and rewrites the file.
#[test]
#[ignore]
fn regenerate_pins() {
    let mut dims = serde_json::Map::new();
    for (name, cx) in pinned_complexes(&fixture_pair()) {
        let d: Vec<usize> = (0..=2).map(|n| cohomology_dense(cx.as_ref(), n).unwrap().cohomology_dim).collect();
        dims.insert(name.to_string(), serde_json::json!(d));
    }
    let doc = serde_json::json!({
        "fixture": "k[x]/(x^2) with adjoint bimodule, T1 = (1 -> x, x -> 0), T2 = -T1",
        "oracle": "dense Gaussian elimination",
        "dims": dims,
    });
    std::fs::write(PINS_PATH, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
}

#[test]
fn sparse_path_reproduces_pins() {
    let pins = read_pins();
    assert_eq!(pins.len(), 4);
    let complexes = pinned_complexes(&fixture_pair());
    for (name, want) in pins {
        let cx = &complexes.iter().find(|(n, _)| *n == name).unwrap().1;
        let got: Vec<usize> = (0..=2).map(|n| cohomology(cx.as_ref(), n).unwrap().cohomology_dim).collect();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn dense_path_reproduces_pins() {
    let complexes = pinned_complexes(&fixture_pair());
    for (name, want) in read_pins() {
        let cx = &complexes.iter().find(|(n, _)| *n == name).unwrap().1;
        let got: Vec<usize> = (0..=2).map(|n| cohomology_dense(cx.as_ref(), n).unwrap().cohomology_dim).collect();
        assert_eq!(got, want, "{name}");
    }
}
