//! Hochschild-type differentials and the complexes of an O-operator, a
//! compatible pair and a compatible associative algebra.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    check_compatible_associative, check_compatible_bimodule, Algebra, Bimodule, CompatibleAlgebra,
    CompatibleBimodule,
};
use crate::cochain::{derived_bracket, lifted_bracket, theta, Context, MMap, TupleCochain};
use crate::complex::{cohomology, Complex, CohomologyReport};
use crate::error::{ensure_dims, Error, Result};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::operators::{
    induced_compatible_algebra, induced_compatible_bimodule, is_compatible_pair, is_ooperator, OperatorPair,
};
use crate::report::CheckReport;
use crate::sample;
use crate::scalar::{axpy, unit_vec, Scalar};
use crate::tensor::Tensor;

/// Hochschild coboundary of `f: A^{⊗n} -> M`:
/// `a_1 f(a_2..) + Σ (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(..) a_{n+1}`.
pub fn hochschild_delta(alg: &Algebra, bim: &Bimodule, f: &Tensor) -> Result<Tensor> {
    let (da, dm) = (alg.dim(), bim.module_dim());
    ensure_dims("bimodule algebra dimension", bim.algebra_dim(), da)?;
    ensure_dims("cochain output dimension", f.out_dim(), dm)?;
    if f.in_dims().iter().any(|&d| d != da) {
        return Err(Error::Input("cochain inputs must all be algebra elements".into()));
    }
    let n = f.arity();
    Ok(Tensor::from_fn(vec![da; n + 1], dm, |w| {
        let mut out = bim.act_left(&alg.unit(w[0]), f.slot(&w[1..]));
        for i in 1..=n {
            let prod = alg.mul_basis(w[i - 1], w[i]);
            let v = crate::cochain::eval_with_vector(f, &w[..i - 1], prod, &w[i + 1..]);
            axpy(&mut out, &Scalar::sign(i as i64), &v);
        }
        let last = bim.act_right(f.slot(&w[..n]), &alg.unit(w[n]));
        axpy(&mut out, &Scalar::sign(n as i64 + 1), &last);
        out
    }))
}

pub(crate) fn require_ooperator(ctx: &Context, t: &MMap) -> Result<()> {
    let rep = is_ooperator(ctx, t)?;
    if !rep.passed {
        return Err(Error::Domain("operator is not an O-operator".into()));
    }
    Ok(())
}

pub(crate) fn require_compatible(p: &OperatorPair) -> Result<()> {
    if !is_compatible_pair(p)?.passed {
        return Err(Error::Domain("operators are not a compatible pair".into()));
    }
    Ok(())
}

/// `δ_T = [T, -]`.
pub fn delta_t(ctx: &Context, t: &MMap, f: &MMap) -> Result<MMap> {
    require_ooperator(ctx, t)?;
    derived_bracket(ctx, t, f)
}

/// `δ_(T1,T2) = ⟦(T1, T2), -⟧`.
pub fn delta_pair(p: &OperatorPair, x: &TupleCochain) -> Result<TupleCochain> {
    require_compatible(p)?;
    pair_differential(p, x)
}

fn pair_differential(p: &OperatorPair, x: &TupleCochain) -> Result<TupleCochain> {
    let t = TupleCochain::pair(p.t1.clone(), p.t2.clone())?;
    lifted_bracket(&p.ctx, &t, x)
}

/// A cochain of a compatible associative algebra: `m ∈ M` in degree 0, `n`
/// maps `A^{⊗n} -> M` in degree `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CAssCochain {
    degree: usize,
    parts: Vec<Tensor>,
}

impl CAssCochain {
    pub fn part_count(degree: usize) -> usize {
        degree.max(1)
    }

    pub fn new(degree: usize, parts: Vec<Tensor>) -> Result<Self> {
        ensure_dims("cochain part count", parts.len(), Self::part_count(degree))?;
        let shape = (parts[0].in_dims().to_vec(), parts[0].out_dim());
        if parts.iter().any(|p| p.arity() != degree || (p.in_dims().to_vec(), p.out_dim()) != shape) {
            return Err(Error::Input(format!("all parts of a degree-{degree} cochain need one shape")));
        }
        Ok(CAssCochain { degree, parts })
    }

    pub fn zero(degree: usize, da: usize, dm: usize) -> Self {
        CAssCochain { degree, parts: vec![Tensor::zeros(vec![da; degree], dm); Self::part_count(degree)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[Tensor] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Tensor::is_zero)
    }

    pub fn coord_len(degree: usize, da: usize, dm: usize) -> usize {
        Self::part_count(degree) * dm * da.pow(degree as u32)
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.parts.iter().flat_map(|p| p.data().iter().cloned()).collect()
    }

    pub fn from_coords(degree: usize, da: usize, dm: usize, coords: &[Scalar]) -> Result<Self> {
        ensure_dims("cochain coordinates", coords.len(), Self::coord_len(degree, da, dm))?;
        let step = dm * da.pow(degree as u32);
        let parts = (0..Self::part_count(degree))
            .map(|k| Tensor::from_data(vec![da; degree], dm, coords[k * step..(k + 1) * step].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        CAssCochain::new(degree, parts)
    }
}

fn check_cass_context(c: &CompatibleAlgebra, cb: &CompatibleBimodule) -> Result<()> {
    ensure_dims("bimodule algebra dimension", cb.first.algebra_dim(), c.dim())
}

/// `m ↦ (a ↦ (a ._1 m - m ._1 a) - (a ._2 m - m ._2 a))`; `C^0` is its kernel.
fn degree_zero_condition(c: &CompatibleAlgebra, cb: &CompatibleBimodule) -> Result<Matrix> {
    let (da, dm) = (c.dim(), cb.module_dim());
    let cols = (0..dm)
        .map(|u| {
            let m = Tensor::from_data(vec![], dm, unit_vec(dm, u)).expect("shape");
            let d1 = hochschild_delta(&c.first, &cb.first, &m)?;
            let d2 = hochschild_delta(&c.second, &cb.second, &m)?;
            Ok(d1.minus(&d2).data().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(da * dm, &cols)
}

/// The degree-0 cochain space `{m : a ._1 m - m ._1 a = a ._2 m - m ._2 a}`.
pub fn cass_degree_zero_space(c: &CompatibleAlgebra, cb: &CompatibleBimodule) -> Result<Subspace> {
    Ok(kernel_basis(&degree_zero_condition(c, cb)?))
}

fn cass_differential(c: &CompatibleAlgebra, cb: &CompatibleBimodule, x: &CAssCochain) -> Result<CAssCochain> {
    let n = x.degree;
    if n == 0 {
        let d = hochschild_delta(&c.first, &cb.first, &x.parts[0])?;
        return CAssCochain::new(1, vec![d]);
    }
    let (da, dm) = (c.dim(), cb.module_dim());
    let mut parts = vec![Tensor::zeros(vec![da; n + 1], dm); n + 1];
    for (i, f) in x.parts.iter().enumerate() {
        parts[i].add_assign(&hochschild_delta(&c.first, &cb.first, f)?);
        parts[i + 1].add_assign(&hochschild_delta(&c.second, &cb.second, f)?);
    }
    CAssCochain::new(n + 1, parts)
}

/// Convolution of the two Hochschild differentials; in degree 0 the input
/// must satisfy the degree-0 condition, which makes both agree.
pub fn delta_cass(c: &CompatibleAlgebra, cb: &CompatibleBimodule, x: &CAssCochain) -> Result<CAssCochain> {
    check_cass_context(c, cb)?;
    if x.degree == 0 {
        let cond = degree_zero_condition(c, cb)?;
        if !cond.mul_vec(x.parts[0].data())?.iter().all(Scalar::is_zero) {
            return Err(Error::Domain("degree-0 element does not satisfy the compatibility condition".into()));
        }
    }
    cass_differential(c, cb, x)
}

/// The complex of an O-operator.
pub struct OComplex {
    ctx: Context,
    t: MMap,
}

impl OComplex {
    pub fn new(ctx: Context, t: MMap) -> Result<Self> {
        require_ooperator(&ctx, &t)?;
        Ok(OComplex { ctx, t })
    }
}

impl Complex for OComplex {
    fn name(&self) -> &str {
        "O-operator"
    }

    fn dim(&self, n: usize) -> usize {
        MMap::coord_len(n, self.ctx.da(), self.ctx.dm())
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = MMap::from_coords(n, self.ctx.da(), self.ctx.dm(), x.to_vec())?;
        Ok(derived_bracket(&self.ctx, &self.t, &f)?.coords().to_vec())
    }
}

/// The complex of a compatible pair.
pub struct PairComplex {
    pair: OperatorPair,
}

impl PairComplex {
    pub fn new(pair: OperatorPair) -> Result<Self> {
        require_compatible(&pair)?;
        Ok(PairComplex { pair })
    }
}

impl Complex for PairComplex {
    fn name(&self) -> &str {
        "compatible O-operator"
    }

    fn dim(&self, n: usize) -> usize {
        TupleCochain::coord_len(n, self.pair.ctx.da(), self.pair.ctx.dm())
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let x = TupleCochain::from_coords(n, self.pair.ctx.da(), self.pair.ctx.dm(), x)?;
        Ok(pair_differential(&self.pair, &x)?.coords())
    }
}

/// The complex of a compatible associative algebra with coefficients in a
/// compatible bimodule.
pub struct CAssComplex {
    alg: CompatibleAlgebra,
    bim: CompatibleBimodule,
}

impl CAssComplex {
    pub fn new(alg: CompatibleAlgebra, bim: CompatibleBimodule) -> Result<Self> {
        check_cass_context(&alg, &bim)?;
        if !check_compatible_associative(&alg).passed {
            return Err(Error::Domain("products are not a compatible associative algebra".into()));
        }
        if !check_compatible_bimodule(&alg, &bim)?.passed {
            return Err(Error::Domain("actions are not a compatible bimodule".into()));
        }
        Ok(CAssComplex { alg, bim })
    }
}

impl Complex for CAssComplex {
    fn name(&self) -> &str {
        "compatible associative"
    }

    fn dim(&self, n: usize) -> usize {
        CAssCochain::coord_len(n, self.alg.dim(), self.bim.module_dim())
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let x = CAssCochain::from_coords(n, self.alg.dim(), self.bim.module_dim(), x)?;
        Ok(cass_differential(&self.alg, &self.bim, &x)?.coords())
    }

    fn degree_zero_subspace(&self) -> Result<Option<Subspace>> {
        cass_degree_zero_space(&self.alg, &self.bim).map(Some)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoVerification {
    /// `δ^i_Ass(f) = (-1)^n [T_i, f]` on every basis map `f`.
    pub differentials: CheckReport,
    /// Cohomology of the pair and of the induced compatible associative
    /// algebra, degree by degree.
    pub pair_cohomology: Vec<CohomologyReport>,
    pub induced_cohomology: Vec<CohomologyReport>,
    pub dims_agree: bool,
}

/// Compares the pair complex with the Hochschild-type complex of the induced
/// compatible associative algebra `(M, *_1, *_2)` with coefficients in `A`.
pub fn verify_induced_iso(p: &OperatorPair, max_arity: usize, max_degree: usize) -> Result<IsoVerification> {
    let c = induced_compatible_algebra(p)?;
    let cb = induced_compatible_bimodule(p)?;
    let ctx = &p.ctx;
    let (da, dm) = (ctx.da(), ctx.dm());
    let mut rep = CheckReport::new("induced Hochschild differentials");
    for n in 0..=max_arity {
        let len = MMap::coord_len(n, da, dm);
        for j in 0..len {
            let f = MMap::from_coords(n, da, dm, unit_vec(len, j))?;
            let sign = Scalar::sign(n as i64);
            for (k, (t, alg, bim)) in [(&p.t1, &c.first, &cb.first), (&p.t2, &c.second, &cb.second)]
                .into_iter()
                .enumerate()
            {
                let lhs = hochschild_delta(alg, bim, f.tensor())?;
                let rhs = derived_bracket(ctx, t, &f)?.scaled(&sign);
                let d: Vec<Scalar> = lhs.data().iter().zip(rhs.coords()).map(|(a, b)| a - b).collect();
                let name = if k == 0 { "d1(f) = (-1)^n [T1, f]" } else { "d2(f) = (-1)^n [T2, f]" };
                rep.expect_zero(name, &[n, j], d);
            }
        }
    }
    let pair = PairComplex::new(p.clone())?;
    let ind = CAssComplex::new(c, cb)?;
    let pair_cohomology = (0..=max_degree).map(|n| cohomology(&pair, n)).collect::<Result<Vec<_>>>()?;
    let induced_cohomology = (0..=max_degree).map(|n| cohomology(&ind, n)).collect::<Result<Vec<_>>>()?;
    let dims_agree = pair_cohomology
        .iter()
        .zip(&induced_cohomology)
        .all(|(a, b)| a.cohomology_dim == b.cohomology_dim);
    Ok(IsoVerification { differentials: rep, pair_cohomology, induced_cohomology, dims_agree })
}

/// `θ ∘ δ_(T1,T2) = δ_{T1+T2} ∘ θ` on `samples` random cochains of each
/// degree up to `max_degree`.
pub fn verify_theta_chain_map(
    p: &OperatorPair,
    max_degree: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CheckReport> {
    require_compatible(p)?;
    let ctx = &p.ctx;
    let total = p.sum();
    let mut rep = CheckReport::new("theta chain map");
    for n in 0..=max_degree {
        for s in 0..samples {
            let x = sample::tuple(rng, n, ctx.da(), ctx.dm());
            let lhs = theta(&pair_differential(p, &x)?);
            let rhs = derived_bracket(ctx, &total, &theta(&x))?;
            rep.expect_zero("theta d(x) = d theta(x)", &[n, s], lhs.minus(&rhs).coords().to_vec());
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_bimodule, CompatibleBimodule};
    use crate::complex::squares_to_zero;

    fn dual() -> Algebra {
        Algebra::from_ints(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap()
    }

    fn nilpotent(ctx: &Context) -> MMap {
        let t = MMap::from_coords(1, 2, 2, [0, 1, 0, 0].iter().map(|&x| Scalar::from_int(x)).collect()).unwrap();
        assert!(is_ooperator(ctx, &t).unwrap().passed);
        t
    }

    #[test]
    fn hochschild_of_product_vanishes() {
        let a = dual();
        let bim = adjoint_bimodule(&a);
        let d = hochschild_delta(&a, &bim, a.mu()).unwrap();
        assert!(d.is_zero());
        let m = Tensor::from_data(vec![], 2, vec![Scalar::one(), Scalar::from_int(2)]).unwrap();
        // commutative algebra, symmetric bimodule: a.m - m.a = 0
        assert!(hochschild_delta(&a, &bim, &m).unwrap().is_zero());
    }

    #[test]
    fn differentials_square_to_zero_on_dual_numbers() {
        let ctx = Context::adjoint(dual());
        let t = nilpotent(&ctx);
        let o = OComplex::new(ctx.clone(), t.clone()).unwrap();
        let p = PairComplex::new(OperatorPair::new(ctx.clone(), t.clone(), t.scaled(&-Scalar::one())).unwrap())
            .unwrap();
        let ca = CompatibleAlgebra::new(dual(), dual()).unwrap();
        let cass = CAssComplex::new(ca.clone(), CompatibleBimodule::adjoint(&ca)).unwrap();
        for n in 0..3 {
            assert!(squares_to_zero(&o, n).unwrap());
            assert!(squares_to_zero(&p, n).unwrap());
            assert!(squares_to_zero(&cass, n).unwrap());
        }
    }

    #[test]
    fn zero_pair_degree_zero() {
        let ctx = Context::adjoint(dual());
        let z = MMap::zero(1, 2, 2);
        let p = PairComplex::new(OperatorPair::new(ctx, z.clone(), z).unwrap()).unwrap();
        let h0 = cohomology(&p, 0).unwrap();
        assert_eq!(h0.cohomology_dim, 2);
    }

    #[test]
    fn degree_zero_condition_is_enforced() {
        let a = dual();
        let zero = Algebra::zero(2);
        let ca = CompatibleAlgebra::new(a.clone(), zero).unwrap();
        let cb = CompatibleBimodule::adjoint(&ca);
        let m = CAssCochain::new(0, vec![Tensor::from_data(vec![], 2, unit_vec(2, 0)).unwrap()]).unwrap();
        // 1 . 1 - 1 . 1 = 0 for both products, so the unit is admissible
        assert!(delta_cass(&ca, &cb, &m).is_ok());
    }
}
