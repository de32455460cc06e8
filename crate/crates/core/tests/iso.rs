mod common;

use common::{fixture_pair, pair_catalog};
use ocoh::cochain::MMap;
use ocoh::cohomology::{verify_induced_iso, CAssComplex, PairComplex};
use ocoh::complex::{CohomologyReport, Complex};
use ocoh::operators::{induced_compatible_algebra, induced_compatible_bimodule};

fn dims(r: &[CohomologyReport]) -> Vec<usize> {
    r.iter().map(|x| x.cohomology_dim).collect()
}

#[test]
fn differential_identities_on_catalog() {
    for p in pair_catalog().iter().step_by(37) {
        let v = verify_induced_iso(p, 3, 0).unwrap();
        assert!(v.differentials.passed, "{:?}", v.differentials.first_failure());
    }
}

#[test]
fn cochain_spaces_differ_in_size() {
    // n + 1 copies of Hom(M^n, A) on one side, n copies on the other
    let p = fixture_pair();
    let v = verify_induced_iso(&p, 3, 2).unwrap();
    assert!(v.differentials.passed);
    assert_eq!(dims(&v.pair_cohomology), vec![2, 4, 8]);
    assert_eq!(dims(&v.induced_cohomology), vec![2, 2, 6]);
    assert!(!v.dims_agree);
    let hom = |n| MMap::coord_len(n, 2, 2);
    let pair = PairComplex::new(p.clone()).unwrap();
    let ind = CAssComplex::new(induced_compatible_algebra(&p).unwrap(), induced_compatible_bimodule(&p).unwrap()).unwrap();
    assert_eq!((1..=3).map(|n| pair.dim(n)).collect::<Vec<_>>(), vec![2 * hom(1), 3 * hom(2), 4 * hom(3)]);
    assert_eq!((1..=3).map(|n| ind.dim(n)).collect::<Vec<_>>(), vec![hom(1), 2 * hom(2), 3 * hom(3)]);
}

/// The dimension equality as literally claimed; fails on most nonzero pairs.
#[test]
#[ignore]
fn cohomology_dimensions_agree_everywhere() {
    let mut bad = Vec::new();
    for (k, p) in pair_catalog().iter().enumerate() {
        let v = verify_induced_iso(p, 0, 2).unwrap();
        if !v.dims_agree {
            bad.push((k, dims(&v.pair_cohomology), dims(&v.induced_cohomology)));
        }
    }
    assert!(bad.is_empty(), "{} of {} pairs disagree, first {:?}", bad.len(), pair_catalog().len(), bad.first());
}
