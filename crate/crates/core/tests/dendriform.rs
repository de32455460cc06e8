mod common;

use common::{dual, fixture_pair, nil, s};
use ocoh::algebra::{check_compatible_associative, Algebra, Bimodule};
use ocoh::cochain::{Context, MMap, TupleCochain};
use ocoh::cohomology::delta_pair;
use ocoh::complex::{cohomology, squares_to_zero, Complex};
use ocoh::dendriform::*;
use ocoh::operators::{induced_compatible_algebra, OperatorPair};
use ocoh::sample;
use ocoh::tensor::{mat_identity, mat_scale, Tensor};
use ocoh::{Error, Scalar};

fn line(prec: i64, succ: i64) -> DendriformAlgebra {
    let t = |x: i64| Tensor::from_data(vec![1, 1], 1, vec![s(x)]).unwrap();
    DendriformAlgebra::new(1, t(prec), t(succ)).unwrap()
}

/// Induced structures from a spread of the compatible pairs on the
/// two-dimensional standard contexts with entries in {-1, 0, 1}.
fn induced_catalog() -> Vec<(OperatorPair, CompatibleDendriform)> {
    let algs = sample::associative_algebras(2, &[0, 1]);
    let ctxs = sample::standard_contexts(&algs);
    let mut out = Vec::new();
    for ctx in ctxs.iter().step_by(3) {
        for p in sample::compatible_pairs(ctx, &[-1, 0, 1]).into_iter().step_by(151) {
            let cd = induced_dendriform(&p).unwrap();
            out.push((p, cd));
        }
    }
    out
}

#[test]
fn induced_fixture_structure() {
    let cd = induced_dendriform(&fixture_pair()).unwrap();
    assert!(check_compatible_dendriform(&cd).passed);
    // u < v = u T(v), u > v = T(u) v with T(1) = x, T(x) = 0
    let x = |i: usize, j: usize| cd.first.prec().slot(&[i, j]).to_vec();
    assert_eq!(x(0, 0), vec![s(0), s(1)]);
    assert_eq!(x(1, 0), vec![s(0), s(0)]);
    assert_eq!(x(0, 1), vec![s(0), s(0)]);
    assert_eq!(cd.first.succ(), cd.first.prec());
    assert_eq!(cd.second, cd.first.scaled(&s(-1)));
}

#[test]
fn line_structures() {
    // on k only one of the two products can be nonzero
    for a in -1..=1 {
        for b in -1..=1 {
            let d = line(a, b);
            assert_eq!(check_dendriform(&d).passed, a * b == 0, "({a}, {b})");
            let br = brace_bracket(&d.pi(), &d.pi()).unwrap();
            assert_eq!(br.is_zero(), a * b == 0);
        }
    }
    let cd = CompatibleDendriform::new(line(1, 0), line(0, 1)).unwrap();
    let rep = check_compatible_dendriform(&cd);
    assert!(!rep.passed);
    assert!(rep.defects.iter().all(|d| d.identity.starts_with("(x")));
    let mixed = brace_bracket(&cd.first.pi(), &cd.second.pi()).unwrap();
    assert!(!mixed.is_zero());
    assert!(matches!(CDendComplex::new(cd.clone()), Err(Error::Domain(_))));
    let x = CompDendCochain::zero(1, 1);
    assert!(matches!(delta_cdend(&cd, &x), Err(Error::Domain(_))));
}

#[test]
fn doubled_structures() {
    for a in -1..=1 {
        for b in -1..=1 {
            let d = line(a, b);
            let cd = CompatibleDendriform::new(d.clone(), d.clone()).unwrap();
            assert_eq!(check_compatible_dendriform(&cd).passed, check_dendriform(&d).passed);
        }
    }
}

#[test]
fn brackets_detect_axioms() {
    let mut rng = sample::rng(11);
    for (_, cd) in induced_catalog() {
        assert!(check_compatible_dendriform(&cd).passed);
        let (p1, p2) = (cd.first.pi(), cd.second.pi());
        assert!(brace_bracket(&p1, &p1).unwrap().is_zero());
        assert!(brace_bracket(&p2, &p2).unwrap().is_zero());
        assert!(brace_bracket(&p1, &p2).unwrap().is_zero());
    }
    for _ in 0..50 {
        let d = DendriformAlgebra::new(2, sample::tensor(&mut rng, vec![2, 2], 2), sample::tensor(&mut rng, vec![2, 2], 2))
            .unwrap();
        let zero = brace_bracket(&d.pi(), &d.pi()).unwrap().is_zero();
        assert_eq!(zero, check_dendriform(&d).passed);
    }
}

#[test]
fn composition_unfolds_to_products() {
    let cd = induced_dendriform(&fixture_pair()).unwrap();
    let d = &cd.first;
    let pi = d.pi();
    let c = partial_composition(&pi, 1, &pi).unwrap();
    let c2 = partial_composition(&pi, 2, &pi).unwrap();
    for w in ocoh::tensor::multi_indices(&[2, 2, 2]) {
        let (x, y, z) = (ocoh::scalar::unit_vec(2, w[0]), ocoh::scalar::unit_vec(2, w[1]), ocoh::scalar::unit_vec(2, w[2]));
        assert_eq!(c.label(1).slot(&w), d.left(&d.left(&x, &y), &z).as_slice());
        assert_eq!(c.label(2).slot(&w), d.left(&d.right(&x, &y), &z).as_slice());
        let star = d.total();
        assert_eq!(c.label(3).slot(&w), d.right(&star.mul(&x, &y), &z).as_slice());
        let inner: Vec<Scalar> = star.mul(&y, &z);
        assert_eq!(c2.label(1).slot(&w), d.left(&x, &inner).as_slice());
        assert_eq!(c2.label(2).slot(&w), d.right(&x, &d.left(&y, &z)).as_slice());
        assert_eq!(c2.label(3).slot(&w), d.right(&x, &d.right(&y, &z)).as_slice());
    }
    assert!(partial_composition(&pi, 3, &pi).is_err());
}

#[test]
fn operad_laws() {
    let mut rng = sample::rng(5);
    let d = 2;
    for _ in 0..10 {
        let (m, n, k) = (2, 2, 1 + rand::Rng::gen_range(&mut rng, 0..2usize));
        let f = sample::dend(&mut rng, m, d);
        let g = sample::dend(&mut rng, n, d);
        let h = sample::dend(&mut rng, k, d);
        let id = DendCochain::identity(d);
        for i in 1..=m {
            assert_eq!(partial_composition(&f, i, &id).unwrap(), f);
        }
        assert_eq!(partial_composition(&id, 1, &f).unwrap(), f);
        // sequential
        for i in 1..=m {
            for j in 1..=n {
                let lhs = partial_composition(&partial_composition(&f, i, &g).unwrap(), i + j - 1, &h).unwrap();
                let rhs = partial_composition(&f, i, &partial_composition(&g, j, &h).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "sequential i={i} j={j}");
            }
        }
        // parallel
        for i in 1..=m {
            for j in i + 1..=m {
                let lhs = partial_composition(&partial_composition(&f, i, &g).unwrap(), j + n - 1, &h).unwrap();
                let rhs = partial_composition(&partial_composition(&f, j, &h).unwrap(), i, &g).unwrap();
                assert_eq!(lhs, rhs, "parallel i={i} j={j}");
            }
        }
    }
}

#[test]
fn brace_is_graded_lie() {
    let mut rng = sample::rng(9);
    for _ in 0..20 {
        let ar: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 1..=2usize)).collect();
        let f = sample::dend(&mut rng, ar[0], 2);
        let g = sample::dend(&mut rng, ar[1], 2);
        let h = sample::dend(&mut rng, ar[2], 2);
        let (a, b, c) = (ar[0] as i64 - 1, ar[1] as i64 - 1, ar[2] as i64 - 1);
        let fg = brace_bracket(&f, &g).unwrap();
        let gf = brace_bracket(&g, &f).unwrap();
        assert_eq!(fg, gf.scaled(&-Scalar::sign(a * b)));
        let t1 = brace_bracket(&f, &brace_bracket(&g, &h).unwrap()).unwrap().scaled(&Scalar::sign(a * c));
        let t2 = brace_bracket(&g, &brace_bracket(&h, &f).unwrap()).unwrap().scaled(&Scalar::sign(b * a));
        let t3 = brace_bracket(&h, &brace_bracket(&f, &g).unwrap()).unwrap().scaled(&Scalar::sign(c * b));
        assert!(t1.plus(&t2).plus(&t3).is_zero(), "arities {ar:?}");
    }
}

#[test]
fn differential_basics() {
    let cd = induced_dendriform(&fixture_pair()).unwrap();
    assert!(delta_cdend(&cd, &CompDendCochain::zero(2, 2)).unwrap().is_zero());
    // δ(id) = ({{π1, id}}, {{π2, id}}) = (π1, π2)
    let id = CompDendCochain::new(1, vec![DendCochain::identity(2)]).unwrap();
    let d = delta_cdend(&cd, &id).unwrap();
    assert_eq!(d.parts()[0], cd.first.pi());
    assert_eq!(d.parts()[1], cd.second.pi());
    let cx = CDendComplex::new(cd).unwrap();
    for n in 0..=3 {
        assert!(squares_to_zero(&cx, n).unwrap(), "degree {n}");
    }
}

#[test]
fn zero_structure_cohomology_is_everything() {
    let cx = CDendComplex::new(CompatibleDendriform::zero(2)).unwrap();
    for n in 1..=3 {
        let h = cohomology(&cx, n).unwrap();
        assert_eq!(h.cohomology_dim, cx.dim(n));
    }
}

#[test]
fn differential_squares_to_zero_on_catalog() {
    for (_, cd) in induced_catalog() {
        let cx = CDendComplex::new(cd).unwrap();
        for n in 1..=2 {
            assert!(squares_to_zero(&cx, n).unwrap());
        }
    }
}

#[test]
fn triangle_with_induced_algebra() {
    for (p, cd) in induced_catalog() {
        let tot = total_algebra(&cd);
        assert_eq!(tot, induced_compatible_algebra(&p).unwrap());
        assert!(check_compatible_associative(&tot).passed);
    }
}

#[test]
fn prelie_lie_square() {
    for (_, cd) in induced_catalog() {
        let pl = sub_adjacent_prelie(&cd);
        assert!(check_compatible_prelie(&pl).passed);
        let lie = prelie_to_lie(&pl);
        assert!(check_compatible_lie(&lie).passed);
        assert_eq!(lie, skew_symmetrization(&total_algebra(&cd)));
    }
    let z = sub_adjacent_prelie(&CompatibleDendriform::zero(2));
    assert!(z.first.diamond().is_zero() && z.second.diamond().is_zero());
}

#[test]
fn chain_maps() {
    let mut rng = sample::rng(3);
    let mut pairs = vec![fixture_pair()];
    pairs.extend(common::random_pairs(&mut rng, 4));
    for p in &pairs {
        let cd = induced_dendriform(p).unwrap();
        let rep = verify_phi_chain_map(&cd, 3, 5, &mut rng).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
        let rep = verify_psi_chain_map(p, 3, 5, &mut rng).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
    }
}

#[test]
fn displayed_psi_commutes_up_to_degree_sign() {
    let mut rng = sample::rng(8);
    let p = fixture_pair();
    let cd = induced_dendriform(&p).unwrap();
    let mut strict = Vec::new();
    for n in 1..=3 {
        let x = sample::tuple(&mut rng, n, 2, 2);
        let lhs = psi_displayed(&p, &delta_pair(&p, &x).unwrap()).unwrap();
        let rhs = delta_cdend(&cd, &psi_displayed(&p, &x).unwrap()).unwrap();
        let twisted: Vec<Scalar> = rhs.coords().iter().map(|c| c * &Scalar::sign(n as i64)).collect();
        assert_eq!(lhs.coords(), twisted);
        strict.push(lhs.coords() == rhs.coords());
    }
    // the fixture is nontrivial enough to tell the two apart in odd degrees
    assert_eq!(strict, vec![false, true, false]);
    let x = sample::tuple(&mut rng, 3, 2, 2);
    let neg: Vec<Scalar> = psi_displayed(&p, &x).unwrap().coords().iter().map(|c| -c.clone()).collect();
    assert_eq!(psi_map(&p, &x).unwrap().coords(), neg);
}

#[test]
fn psi_shape() {
    let p = fixture_pair();
    let x = TupleCochain::pair(nil(), nil()).unwrap();
    let y = psi_map(&p, &x).unwrap();
    assert_eq!(y.degree(), 2);
    assert!(psi_map(&p, &TupleCochain::zero(2, 2, 2)).unwrap().is_zero());
    assert!(psi_map(&p, &TupleCochain::zero(0, 2, 2)).is_err());
    // the only labels are [1] and [2]; in degree 1 both signs are +1, so Ψ(T, T) = (π, π)
    let cd = induced_dendriform(&OperatorPair::new(dual(), nil(), nil()).unwrap()).unwrap();
    let pi = cd.first.pi();
    assert_eq!(y.parts()[0].label(2), pi.label(2));
    assert_eq!(y.parts()[0].label(1), pi.label(1));
}

#[test]
fn phi_on_arity_one() {
    let mut rng = sample::rng(1);
    let x = sample::comp_dend(&mut rng, 1, 2);
    let y = phi_map(&x);
    assert_eq!(&y.parts()[0], x.parts()[0].label(1));
}

#[test]
fn naturality_under_rescaling() {
    let p = fixture_pair();
    let c = s(3);
    let q = OperatorPair::new(p.ctx.clone(), p.t1.scaled(&c), p.t2.scaled(&c)).unwrap();
    let phi = mat_identity(2);
    let psi = mat_scale(&mat_identity(2), &Scalar::ratio(1, 3));
    let rep = check_induced_naturality(&phi, &psi, &p, &q).unwrap();
    assert!(rep.passed, "{:?}", rep.first_failure());
    let bad = mat_identity(2);
    let ok = check_dendriform_morphism(&bad, &induced_dendriform(&p).unwrap(), &induced_dendriform(&q).unwrap()).unwrap();
    assert!(!ok.passed);
}

#[test]
fn json_round_trip() {
    let mut rng = sample::rng(4);
    let f = sample::dend(&mut rng, 2, 2);
    let v = f.to_json();
    assert_eq!(v["arity"], 2);
    assert_eq!(DendCochain::from_json(&v, 2).unwrap(), f);
}

#[test]
fn non_associative_context_is_rejected() {
    let alg = Algebra::from_ints(&[&[&[0, 1], &[0, 0]], &[&[1, 0], &[0, 0]]]).unwrap();
    let ctx = Context::new(alg.clone(), Bimodule::zero(2, 2)).unwrap();
    let z = MMap::zero(1, 2, 2);
    let p = OperatorPair::new(ctx, z.clone(), z).unwrap();
    // zero operators are always compatible O-operators, the induced structure is zero
    let cd = induced_dendriform(&p).unwrap();
    assert_eq!(cd, CompatibleDendriform::zero(2));
}

