mod common;

use std::time::Instant;

use common::*;
use ocoh::cochain::{Context, MMap, TupleCochain};
use ocoh::cohomology::{delta_pair, PairComplex};
use ocoh::complex::coboundary_matrix;
use ocoh::deformation::*;
use ocoh::linalg::kernel_basis;
use ocoh::linfty::{delta_coa, LInftyElement, COAComplex};
use ocoh::mixed::{MixedMap, Signature, Space};
use ocoh::sample;
use ocoh::scalar::{axpy, unit_vec, zero_vec};
use ocoh::tensor::Tensor;
use ocoh::Scalar;

/// `T(u) T(v) - T(T(u) v + u T(v))` over all basis pairs.
fn o_defect(ctx: &Context, t: &[Vec<Scalar>]) -> Vec<Scalar> {
    let (da, dm) = (ctx.da(), ctx.dm());
    let apply = |u: &[Scalar]| -> Vec<Scalar> {
        (0..da).map(|k| t[k].iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    };
    let mut out = Vec::new();
    for a in 0..dm {
        for b in 0..dm {
            let (u, v) = (unit_vec(dm, a), unit_vec(dm, b));
            let mut lhs = ctx.alg.mul(&apply(&u), &apply(&v));
            let mut inner = ctx.bim.act_left(&apply(&u), &v);
            axpy(&mut inner, &Scalar::one(), &ctx.bim.act_right(&u, &apply(&v)));
            axpy(&mut lhs, &-Scalar::one(), &apply(&inner));
            out.extend(lhs);
        }
    }
    out
}

/// Coefficients of a polynomial of degree `< xs.len()` from its values.
fn interpolate(xs: &[Scalar], ys: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = xs.len();
    let len = ys[0].len();
    let mut coeffs = vec![zero_vec(len); n];
    for i in 0..n {
        // basis polynomial Π_{j != i} (t - x_j) / (x_i - x_j)
        let mut poly = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![Scalar::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * &xs[j]);
            }
            poly = next;
            denom = &denom * &(&xs[i] - &xs[j]);
        }
        for (k, c) in poly.iter().enumerate() {
            axpy(&mut coeffs[k], &(c / &denom), &ys[i]);
        }
    }
    coeffs
}

/// Decides the order-N deformation equations by evaluating the O-identities
/// of `T_1(t)`, `T_2(t)` and `T_1(t) + T_2(t)` at sample points.
fn brute_force_passes(d: &PairDeformation) -> bool {
    let n = d.order();
    let xs: Vec<Scalar> = (0..=2 * n).map(|k| s(k as i64)).collect();
    let eval = |ts: &[MMap], t: &Scalar| -> Vec<Vec<Scalar>> {
        let mut m = ts[0].to_matrix();
        let mut p = Scalar::one();
        for ti in &ts[1..] {
            p = &p * t;
            let tm = ti.to_matrix();
            for (r, row) in m.iter_mut().enumerate() {
                axpy(row, &p, &tm[r]);
            }
        }
        m
    };
    for which in 0..3 {
        let ys: Vec<Vec<Scalar>> = xs
            .iter()
            .map(|t| {
                let (a, b) = (eval(&d.t1, t), eval(&d.t2, t));
                let m = match which {
                    0 => a,
                    1 => b,
                    _ => a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect(),
                };
                o_defect(&d.ctx, &m)
            })
            .collect();
        let coeffs = interpolate(&xs, &ys);
        if coeffs[..=n].iter().any(|c| c.iter().any(|x| !x.is_zero())) {
            return false;
        }
    }
    true
}

fn ops_with_entries(values: &[i64]) -> Vec<MMap> {
    sample::operators(&dual(), values)
}

#[test]
fn scaled_fixture_deformation_matches_expansion() {
    let p = fixture_pair();
    let mut d = PairDeformation::trivial(&p);
    for _ in 0..3 {
        d = d.extended(p.t1.clone(), p.t2.clone()).unwrap();
        assert!(check_pair_deformation(&d).unwrap().passed);
        assert!(brute_force_passes(&d));
    }
}

#[test]
fn deformation_check_agrees_with_expansion() {
    let p = fixture_pair();
    let base = PairDeformation::trivial(&p);
    let mut r = sample::rng(31);
    let ops = ops_with_entries(&[-1, 0, 1]);
    let mut passes = 0;
    for _ in 0..300 {
        let a = ops[r.gen_range(0..ops.len())].clone();
        let b = ops[r.gen_range(0..ops.len())].clone();
        let mut d = base.extended(a, b).unwrap();
        if r.gen_bool(0.5) {
            let c = ops[r.gen_range(0..ops.len())].clone();
            let e = ops[r.gen_range(0..ops.len())].clone();
            d = d.extended(c, e).unwrap();
        }
        let ok = check_pair_deformation(&d).unwrap().passed;
        assert_eq!(ok, brute_force_passes(&d));
        passes += ok as usize;
    }
    assert!(passes > 0);
}

/// Every order-1 deformation of the fixture with entries in {-1, 0, 1}:
/// the candidates are filtered by the linear first-order condition and then
/// confirmed by the full check.
fn order_one_deformations(p: &ocoh::operators::OperatorPair) -> Vec<PairDeformation> {
    let d1 = coboundary_matrix(&PairComplex::new(p.clone()).unwrap(), 1).unwrap();
    let base = PairDeformation::trivial(p);
    let mut out = Vec::new();
    for choice in ocoh::tensor::multi_indices(&[3; 8]) {
        let coords: Vec<Scalar> = choice.iter().map(|&c| s(c as i64 - 1)).collect();
        if !d1.mul_vec(&coords).unwrap().iter().all(Scalar::is_zero) {
            continue;
        }
        let x = TupleCochain::from_coords(1, 2, 2, &coords).unwrap();
        let d = base.extended(x.parts()[0].clone(), x.parts()[1].clone()).unwrap();
        assert!(check_pair_deformation(&d).unwrap().passed);
        out.push(d);
    }
    out
}

#[test]
fn obstruction_extension_pipeline() {
    let start = Instant::now();
    let p = fixture_pair();
    let all = order_one_deformations(&p);
    eprintln!("{} deformations, enumerated in {:?}", all.len(), start.elapsed());
    let mut extensible = 0;
    for d in &all {
        let ob = obstruction(d).unwrap();
        assert!(delta_pair(&p, &ob).unwrap().is_zero());
        let ext = is_extensible(d).unwrap();
        match &ext.witness {
            Some(w) => {
                extensible += 1;
                let e = d.extended(w.parts()[0].clone(), w.parts()[1].clone()).unwrap();
                assert!(check_pair_deformation(&e).unwrap().passed);
                assert_eq!(ext.rank_delta, ext.rank_augmented);
            }
            None => assert!(ext.rank_augmented > ext.rank_delta),
        }
    }
    eprintln!("{extensible} extensible, total {:?}", start.elapsed());
    assert!(all.len() > 1);
    assert!(extensible >= 1);
    assert!(start.elapsed().as_secs_f64() < 10.0, "pipeline took {:?}", start.elapsed());
}

#[test]
fn invalid_deformations_are_rejected() {
    let p = fixture_pair();
    let bad = PairDeformation::trivial(&p)
        .extended(MMap::from_coords(1, 2, 2, vec![s(1), s(0), s(0), s(1)]).unwrap(), MMap::zero(1, 2, 2))
        .unwrap();
    assert!(!check_pair_deformation(&bad).unwrap().passed);
    assert!(matches!(obstruction(&bad), Err(ocoh::Error::Domain(_))));
    assert!(matches!(is_extensible(&bad), Err(ocoh::Error::Domain(_))));
}

#[test]
fn infinitesimal_flags() {
    let p = fixture_pair();
    let base = PairDeformation::trivial(&p);
    let d = base.extended(p.t1.clone(), p.t2.clone()).unwrap();
    let inf = infinitesimal(&d).unwrap();
    assert!(inf.cocycle.passed);
    // (id-like, 0) is not a first-order direction
    let bad = base.extended(MMap::from_coords(1, 2, 2, vec![s(1), s(0), s(0), s(1)]).unwrap(), MMap::zero(1, 2, 2));
    let inf = infinitesimal(&bad.unwrap()).unwrap();
    assert!(!inf.cocycle.passed);
    assert!(!inf.cocycle.defects.is_empty());
}

#[test]
fn gauge_shift_is_an_equivalence() {
    let p = fixture_pair();
    let base = PairDeformation::trivial(&p);
    let d = base.extended(p.t1.clone(), p.t2.clone()).unwrap();
    let mut r = sample::rng(9);
    for _ in 0..10 {
        let a0 = sample::vector(&mut r, 2);
        let g = delta_pair(&p, &TupleCochain::new(0, vec![MMap::constant(a0.clone())]).unwrap()).unwrap();
        let shifted = d.term(1).plus(&g.scaled(&s(-1)));
        let e = base.extended(shifted.parts()[0].clone(), shifted.parts()[1].clone()).unwrap();
        assert!(check_pair_deformation(&e).unwrap().passed);
        let rep = check_pair_equivalence(&d, &e, &PairEquivalence::from_element(a0)).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
    }
    let unrelated = base.extended(MMap::zero(1, 2, 2), MMap::zero(1, 2, 2)).unwrap();
    let rep = check_pair_equivalence(&d, &unrelated, &PairEquivalence::from_element(vec![s(0), s(0)])).unwrap();
    assert!(!rep.passed);
}

#[test]
fn preimages_of_coboundaries() {
    let p = fixture_pair();
    let zero = TupleCochain::zero(1, 2, 2);
    let sol = coboundary_preimage(&p, &zero).unwrap().unwrap();
    let m = coboundary_matrix(&PairComplex::new(p.clone()).unwrap(), 0).unwrap();
    assert!(m.mul_vec(&sol.particular).unwrap().iter().all(Scalar::is_zero));
    assert_eq!(sol.kernel.len(), kernel_basis(&m).dim());
    assert_eq!(nijenhuis_preimage(&p, &sol, &[0]).unwrap(), Some(sol.particular.clone()));

    let a0 = vec![s(2), s(-1)];
    let z = delta_pair(&p, &TupleCochain::new(0, vec![MMap::constant(a0.clone())]).unwrap()).unwrap();
    let sol = coboundary_preimage(&p, &z).unwrap().unwrap();
    let diff: Vec<Scalar> = sol.particular.iter().zip(&a0).map(|(x, y)| x - y).collect();
    assert!(m.mul_vec(&diff).unwrap().iter().all(Scalar::is_zero));

    // a cocycle outside the image of δ_0
    let d1 = coboundary_matrix(&PairComplex::new(p.clone()).unwrap(), 1).unwrap();
    let cocycles = kernel_basis(&d1);
    let non_boundary = cocycles.basis().iter().find(|v| {
        let z = TupleCochain::from_coords(1, 2, 2, v).unwrap();
        coboundary_preimage(&p, &z).unwrap().is_none()
    });
    assert!(non_boundary.is_some());

    let not_cocycle = TupleCochain::pair(MMap::from_coords(1, 2, 2, vec![s(1), s(0), s(0), s(1)]).unwrap(), MMap::zero(1, 2, 2)).unwrap();
    assert!(matches!(coboundary_preimage(&p, &not_cocycle), Err(ocoh::Error::Domain(_))));
}

fn structure_parts(x: &LInftyElement) -> (Tensor, Tensor, Tensor) {
    let get = |ins: Vec<Space>, out: Space, shape: (Vec<usize>, usize)| {
        x.vprime()
            .component(&Signature::new(ins, out))
            .cloned()
            .unwrap_or_else(|| Tensor::zeros(shape.0, shape.1))
    };
    (
        get(vec![Space::A, Space::A], Space::A, (vec![2, 2], 2)),
        get(vec![Space::A, Space::M], Space::M, (vec![2, 2], 2)),
        get(vec![Space::M, Space::A], Space::M, (vec![2, 2], 2)),
    )
}

fn full_order_one(p: &ocoh::operators::OperatorPair, x: &LInftyElement) -> FullDeformation {
    let (mu1, l1, r1) = structure_parts(x);
    FullDeformation::new(
        2,
        2,
        vec![p.ctx.alg.mu().clone(), mu1],
        vec![p.ctx.bim.left().clone(), l1],
        vec![p.ctx.bim.right().clone(), r1],
        vec![p.t1.clone(), x.parts()[0].clone()],
        vec![p.t2.clone(), x.parts()[1].clone()],
    )
    .unwrap()
}

#[test]
fn full_deformations_are_two_cocycles() {
    let p = fixture_pair();
    let coa = COAComplex::new(&p).unwrap();
    let d2 = coboundary_matrix(&coa, 2).unwrap();
    let cocycles = kernel_basis(&d2);
    let mut r = sample::rng(12);
    for trial in 0..40 {
        let coords = if trial % 2 == 0 {
            let mut v = zero_vec(coa_dim(&coa));
            for b in cocycles.basis() {
                axpy(&mut v, &sample::scalar(&mut r), b);
            }
            v
        } else {
            sample::vector(&mut r, coa_dim(&coa))
        };
        let x = LInftyElement::from_coords(0, 2, 2, true, &coords).unwrap();
        let d = full_order_one(&p, &x);
        let is_cocycle = d2.mul_vec(&coords).unwrap().iter().all(Scalar::is_zero);
        assert_eq!(check_full_deformation(&d).unwrap().passed, is_cocycle);
        let inf = full_infinitesimal(&d).unwrap();
        assert_eq!(inf.cocycle.passed, is_cocycle);
        assert_eq!(inf.cochain, x);
    }
}

fn coa_dim(c: &COAComplex) -> usize {
    use ocoh::complex::Complex;
    c.dim(2)
}

#[test]
fn pair_only_full_deformation_specializes() {
    let p = fixture_pair();
    let base = PairDeformation::trivial(&p);
    let ops = ops_with_entries(&[-1, 0, 1]);
    let mut r = sample::rng(3);
    for _ in 0..50 {
        let a = ops[r.gen_range(0..ops.len())].clone();
        let b = ops[r.gen_range(0..ops.len())].clone();
        let d = base.extended(a, b).unwrap();
        let full = d.as_full();
        assert_eq!(check_full_deformation(&full).unwrap().passed, check_pair_deformation(&d).unwrap().passed);
        let fi = full_infinitesimal(&full).unwrap();
        let pi = infinitesimal(&d).unwrap();
        assert!(fi.cochain.vprime().is_zero());
        assert_eq!(fi.cochain.parts(), pi.cochain.parts());
    }
}

#[test]
fn full_gauge_shift_and_localized_defects() {
    let p = fixture_pair();
    let d = PairDeformation::trivial(&p).extended(p.t1.clone(), p.t2.clone()).unwrap().as_full();
    let mut r = sample::rng(44);
    for _ in 0..10 {
        let phi = sample::mixed_of_bidegree(&mut r, 1, 0, 0, 2, 2);
        let g = delta_coa(&p, &LInftyElement::from_vprime(-1, phi.clone(), true).unwrap()).unwrap();
        let x = full_infinitesimal(&d).unwrap().cochain;
        let e = full_order_one(&p, &x.plus(&g.scaled(&s(-1))));
        assert!(check_full_deformation(&e).unwrap().passed);
        let mat = |sig: Signature| -> Vec<Vec<Scalar>> {
            let t = phi.component(&sig).cloned().unwrap_or_else(|| Tensor::zeros(vec![2], 2));
            (0..2).map(|k| (0..2).map(|u| t.slot(&[u])[k].clone()).collect()).collect()
        };
        let q = FullEquivalence::new(
            2,
            2,
            vec![ocoh::tensor::mat_identity(2), mat(Signature::new(vec![Space::A], Space::A))],
            vec![ocoh::tensor::mat_identity(2), mat(Signature::new(vec![Space::M], Space::M))],
        )
        .unwrap();
        let rep = check_full_equivalence(&d, &e, &q).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
    }
    // perturb μ_1 only: the defect shows up at order 1 in the product families
    let mut bad = d.clone();
    bad.mu[1] = Tensor::from_data(vec![2, 2], 2, vec![s(0), s(0), s(0), s(0), s(0), s(0), s(1), s(0)]).unwrap();
    let rep = check_full_deformation(&bad).unwrap();
    assert!(!rep.passed);
    assert!(rep.defects.iter().all(|f| f.indices[0] == 1));
    let other = FullDeformation { t1: vec![p.t2.clone(), p.t1.clone()], ..d.clone() };
    let id = FullEquivalence::new(2, 2, vec![ocoh::tensor::mat_identity(2)], vec![ocoh::tensor::mat_identity(2)]).unwrap();
    assert!(matches!(check_full_equivalence(&d, &other, &id), Err(ocoh::Error::Input(_))));
    let _ = MixedMap::zero(1, 2, 2);
}

use rand::Rng;
