mod common;

use common::{fixture_pair, random_pairs};
use ocoh::algebra::CompatibleBimodule;
use ocoh::cohomology::{CAssComplex, OComplex, PairComplex};
use ocoh::complex::{squares_to_zero, Complex};
use ocoh::dendriform::{induced_dendriform, CDendComplex};
use ocoh::linfty::COAComplex;
use ocoh::operators::{induced_compatible_algebra, OperatorPair};
use ocoh::sample;

fn complexes(p: &OperatorPair) -> Vec<Box<dyn Complex>> {
    let c = induced_compatible_algebra(p).unwrap();
    let cb = CompatibleBimodule::adjoint(&c);
    vec![
        Box::new(OComplex::new(p.ctx.clone(), p.t1.clone()).unwrap()),
        Box::new(PairComplex::new(p.clone()).unwrap()),
        Box::new(CAssComplex::new(c, cb).unwrap()),
        Box::new(COAComplex::new(p).unwrap()),
        Box::new(CDendComplex::new(induced_dendriform(p).unwrap()).unwrap()),
    ]
}

#[test]
fn fixture_squares_to_zero() {
    for cx in complexes(&fixture_pair()) {
        for n in 0..=3 {
            assert!(squares_to_zero(cx.as_ref(), n).unwrap(), "{} degree {n}", cx.name());
        }
    }
}

#[test]
fn random_contexts_square_to_zero() {
    let mut rng = sample::rng(21);
    for p in random_pairs(&mut rng, 20) {
        for cx in complexes(&p) {
            for n in 0..=3 {
                assert!(squares_to_zero(cx.as_ref(), n).unwrap(), "{} degree {n}", cx.name());
            }
        }
    }
}
