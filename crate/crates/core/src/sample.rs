//! Seeded random data and exhaustive small catalogs for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    adjoint_bimodule, check_associative, coadjoint_bimodule, check_bimodule, Algebra, Bimodule,
};
use crate::cochain::{Context, MMap, TupleCochain};
use crate::dendriform::{CompDendCochain, DendCochain};
use crate::linfty::{base_part_count, lifted_part_count, LInftyElement};
use crate::mixed::{all_signatures, MixedMap};
use crate::operators::{is_compatible_pair, is_ooperator, OperatorPair};
use crate::scalar::Scalar;
use crate::tensor::{multi_indices, Tensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mostly small integers, some halves and thirds, a fair share of zeros.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    match rng.gen_range(0..10) {
        0..=2 => Scalar::zero(),
        3..=7 => Scalar::from_int(rng.gen_range(-3..=3)),
        _ => Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(2..=3)),
    }
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| scalar(rng)).collect()
}

pub fn tensor(rng: &mut impl Rng, in_dims: Vec<usize>, out: usize) -> Tensor {
    let n = in_dims.iter().product::<usize>() * out;
    Tensor::from_data(in_dims, out, vector(rng, n)).expect("shape")
}

pub fn mmap(rng: &mut impl Rng, arity: usize, da: usize, dm: usize) -> MMap {
    MMap::from_tensor(tensor(rng, vec![dm; arity], da)).expect("uniform")
}

pub fn tuple(rng: &mut impl Rng, degree: usize, da: usize, dm: usize) -> TupleCochain {
    let parts = (0..TupleCochain::part_count(degree)).map(|_| mmap(rng, degree, da, dm)).collect();
    TupleCochain::new(degree, parts).expect("shape")
}

/// A random map with every signature populated.
pub fn mixed(rng: &mut impl Rng, arity: usize, da: usize, dm: usize) -> MixedMap {
    let mut f = MixedMap::zero(arity, da, dm);
    for sig in all_signatures(arity) {
        let (ins, out) = f.shape_of(&sig);
        let t = tensor(rng, ins, out);
        f.add_component(sig, &t).expect("shape");
    }
    f
}

/// A random map of a single bidegree.
pub fn mixed_of_bidegree(rng: &mut impl Rng, arity: usize, k: i64, l: i64, da: usize, dm: usize) -> MixedMap {
    let mut f = MixedMap::zero(arity, da, dm);
    for sig in MixedMap::signatures_of_bidegree(arity, k, l) {
        let (ins, out) = f.shape_of(&sig);
        let t = tensor(rng, ins, out);
        f.add_component(sig, &t).expect("shape");
    }
    f
}

/// A random `L∞` element of the given degree, base or lifted.
pub fn linfty(rng: &mut impl Rng, degree: i64, da: usize, dm: usize, lifted: bool) -> LInftyElement {
    let arity = (degree + 1) as usize;
    let v = mixed_of_bidegree(rng, arity + 1, degree + 1, 0, da, dm);
    let count = if lifted { lifted_part_count(degree) } else { base_part_count(degree) };
    let parts = (0..count).map(|_| mmap(rng, arity, da, dm)).collect();
    LInftyElement::new(degree, v, parts).expect("shape")
}

/// A random labeled cochain of the given arity.
pub fn dend(rng: &mut impl Rng, arity: usize, dim: usize) -> DendCochain {
    let labels = (0..arity).map(|_| tensor(rng, vec![dim; arity], dim)).collect();
    DendCochain::new(dim, labels).expect("shape")
}

pub fn comp_dend(rng: &mut impl Rng, degree: usize, dim: usize) -> CompDendCochain {
    let parts = (0..degree).map(|_| dend(rng, degree, dim)).collect();
    CompDendCochain::new(degree, parts).expect("shape")
}

/// All associative products on `k^d` whose structure constants lie in
/// `values`.
pub fn associative_algebras(d: usize, values: &[i64]) -> Vec<Algebra> {
    let n = d * d * d;
    let mut out = Vec::new();
    for choice in multi_indices(&vec![values.len(); n]) {
        let data = choice.iter().map(|&c| Scalar::from_int(values[c])).collect();
        let mu = Tensor::from_data(vec![d, d], d, data).expect("shape");
        let alg = Algebra::new(d, mu).expect("shape");
        if check_associative(&alg).passed {
            out.push(alg);
        }
    }
    out
}

/// Adjoint, coadjoint and zero bimodules over each algebra, deduplicated.
pub fn standard_contexts(algebras: &[Algebra]) -> Vec<Context> {
    let mut out: Vec<Context> = Vec::new();
    for a in algebras {
        let d = a.dim();
        let mods: [Bimodule; 3] = [adjoint_bimodule(a), coadjoint_bimodule(a), Bimodule::zero(d, d)];
        for m in mods {
            debug_assert!(check_bimodule(a, &m).expect("dims").passed);
            let ctx = Context::new(a.clone(), m).expect("dims");
            if !out.contains(&ctx) {
                out.push(ctx);
            }
        }
    }
    out
}

/// Every `dim A x dim M` matrix with entries in `values`.
pub fn operators(ctx: &Context, values: &[i64]) -> Vec<MMap> {
    let (da, dm) = (ctx.da(), ctx.dm());
    multi_indices(&vec![values.len(); da * dm])
        .map(|choice| {
            let data = choice.iter().map(|&c| Scalar::from_int(values[c])).collect();
            MMap::from_coords(1, da, dm, data).expect("shape")
        })
        .collect()
}

/// O-operators with entries in `values`.
pub fn o_operators(ctx: &Context, values: &[i64]) -> Vec<MMap> {
    operators(ctx, values)
        .into_iter()
        .filter(|t| is_ooperator(ctx, t).expect("shape").passed)
        .collect()
}

/// Compatible pairs among the O-operators with entries in `values`.
pub fn compatible_pairs(ctx: &Context, values: &[i64]) -> Vec<OperatorPair> {
    let ops = o_operators(ctx, values);
    let mut out = Vec::new();
    for t1 in &ops {
        for t2 in &ops {
            let p = OperatorPair::new(ctx.clone(), t1.clone(), t2.clone()).expect("shape");
            if is_compatible_pair(&p).expect("shape").passed {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogs_are_nonempty() {
        assert_eq!(associative_algebras(1, &[-1, 0, 1]).len(), 3);
        let two = associative_algebras(2, &[0, 1]);
        assert!(two.len() > 4);
        assert!(two.iter().all(|a| check_associative(a).passed));
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = vector(&mut rng(7), 10);
        let b = vector(&mut rng(7), 10);
        assert_eq!(a, b);
    }
}
