#![allow(dead_code)]

use ocoh::algebra::{check_bimodule, Algebra, Bimodule};
use ocoh::cochain::{Context, MMap};
use ocoh::operators::OperatorPair;
use ocoh::Scalar;

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `k[x]/(x^2)` in the basis `1, x`.
pub fn dual_numbers() -> Algebra {
    Algebra::from_ints(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap()
}

pub fn dual() -> Context {
    Context::adjoint(dual_numbers())
}

/// `1 -> x`, `x -> 0`.
pub fn nil() -> MMap {
    MMap::from_coords(1, 2, 2, vec![s(0), s(1), s(0), s(0)]).unwrap()
}

/// `(T, -T)` on the dual numbers with `T = nil()`.
pub fn fixture_pair() -> OperatorPair {
    OperatorPair::new(dual(), nil(), nil().scaled(&s(-1))).unwrap()
}

/// Every dim-1 context with structure constants in {-1, 0, 1}.
pub fn line_contexts() -> Vec<Context> {
    let mut out = Vec::new();
    for m in -1..=1 {
        for l in -1..=1 {
            for r in -1..=1 {
                let alg = Algebra::from_ints(&[&[&[m]]]).unwrap();
                let bim = Bimodule::from_tables(1, 1, &[vec![vec![s(l)]]], &[vec![vec![s(r)]]]).unwrap();
                if check_bimodule(&alg, &bim).unwrap().passed {
                    out.push(Context::new(alg, bim).unwrap());
                }
            }
        }
    }
    out
}

/// Compatible pairs on the standard contexts of dims 1 and 2 with entries in
/// {-1, 0, 1}, computed once per test binary.
pub fn pair_catalog() -> &'static [OperatorPair] {
    static CATALOG: std::sync::OnceLock<Vec<OperatorPair>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out = Vec::new();
        for d in 1..=2 {
            let algs = ocoh::sample::associative_algebras(d, &[-1, 0, 1]);
            for ctx in ocoh::sample::standard_contexts(&algs) {
                out.extend(ocoh::sample::compatible_pairs(&ctx, &[-1, 0, 1]));
            }
        }
        out
    })
}

/// `count` pairs drawn from the catalog, each rescaled by a random nonzero
/// rational (rescaling both operators keeps a pair compatible).
pub fn random_pairs(rng: &mut impl rand::Rng, count: usize) -> Vec<OperatorPair> {
    let cat = pair_catalog();
    (0..count)
        .map(|_| {
            let p = &cat[rng.gen_range(0..cat.len())];
            let c = Scalar::ratio(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=2));
            OperatorPair::new(p.ctx.clone(), p.t1.scaled(&c), p.t2.scaled(&c)).unwrap()
        })
        .collect()
}

/// The complexes attached to a compatible pair, keyed by their short names:
/// the pair itself, the induced compatible associative algebra with
/// coefficients in `A`, the pair with its algebra, and the induced
/// compatible dendriform algebra.
pub fn pinned_complexes(p: &OperatorPair) -> Vec<(&'static str, Box<dyn ocoh::complex::Complex>)> {
    use ocoh::operators::{induced_compatible_algebra, induced_compatible_bimodule};
    let c = induced_compatible_algebra(p).unwrap();
    let cb = induced_compatible_bimodule(p).unwrap();
    vec![
        ("co", Box::new(ocoh::cohomology::PairComplex::new(p.clone()).unwrap())),
        ("cass", Box::new(ocoh::cohomology::CAssComplex::new(c, cb).unwrap())),
        ("coa", Box::new(ocoh::linfty::COAComplex::new(p).unwrap())),
        (
            "cdend",
            Box::new(ocoh::dendriform::CDendComplex::new(ocoh::dendriform::induced_dendriform(p).unwrap()).unwrap()),
        ),
    ]
}

pub const PINS_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/pins/fixture_cohomology.json");

/// Pinned `(complex, [dim H^0, dim H^1, dim H^2])`.
pub fn read_pins() -> Vec<(String, Vec<usize>)> {
    let text = std::fs::read_to_string(PINS_PATH).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["dims"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, d)| (k.clone(), d.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect()))
        .collect()
}
