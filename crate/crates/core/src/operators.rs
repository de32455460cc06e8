//! O-operators, compatible pairs and the structures they induce; associative
//! Yang-Baxter solutions; Nijenhuis elements.

use crate::algebra::{add, coadjoint_bimodule, Algebra, Bimodule, CompatibleAlgebra, CompatibleBimodule};
use crate::cochain::{Context, MMap};
use crate::error::{ensure_dims, Error, Result};
use crate::report::{diff, CheckReport};
use crate::scalar::{unit_vec, zero_vec, Scalar};
use crate::tensor::{mat_vec, multi_indices, Tensor};

/// A linear map `M -> A` over a context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOp {
    pub ctx: Context,
    pub map: MMap,
}

impl LinOp {
    pub fn new(ctx: Context, map: MMap) -> Result<Self> {
        check_operator_shape(&ctx, &map)?;
        Ok(LinOp { ctx, map })
    }

    /// From a `dim A x dim M` matrix.
    pub fn from_matrix(ctx: Context, m: &[Vec<Scalar>]) -> Result<Self> {
        ensure_dims("operator rows", m.len(), ctx.da())?;
        let map = MMap::from_matrix(m, ctx.dm())?;
        LinOp::new(ctx, map)
    }

    pub fn apply(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.map.eval(&[u])
    }

    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        self.map.to_matrix()
    }
}

fn check_operator_shape(ctx: &Context, t: &MMap) -> Result<()> {
    if t.arity() != 1 || t.da() != ctx.da() || t.dm() != ctx.dm() {
        return Err(Error::Input(format!(
            "operator must be a {} x {} matrix",
            ctx.da(),
            ctx.dm()
        )));
    }
    Ok(())
}

/// Two operators over one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPair {
    pub ctx: Context,
    pub t1: MMap,
    pub t2: MMap,
}

impl OperatorPair {
    pub fn new(ctx: Context, t1: MMap, t2: MMap) -> Result<Self> {
        check_operator_shape(&ctx, &t1)?;
        check_operator_shape(&ctx, &t2)?;
        Ok(OperatorPair { ctx, t1, t2 })
    }

    pub fn from_matrices(ctx: Context, t1: &[Vec<Scalar>], t2: &[Vec<Scalar>]) -> Result<Self> {
        let a = LinOp::from_matrix(ctx.clone(), t1)?;
        let b = LinOp::from_matrix(ctx, t2)?;
        OperatorPair::new(a.ctx, a.map, b.map)
    }

    pub fn sum(&self) -> MMap {
        self.t1.plus(&self.t2)
    }

    pub fn combination(&self, lambda: &Scalar, eta: &Scalar) -> MMap {
        let mut t = self.t1.scaled(lambda);
        t.add_scaled(eta, &self.t2);
        t
    }
}

fn apply(t: &MMap, u: &[Scalar]) -> Vec<Scalar> {
    t.eval(&[u])
}

/// `T(u) v + u T(v)` in `M`.
fn star(ctx: &Context, t: &MMap, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    add(&ctx.bim.act_left(&apply(t, u), v), &ctx.bim.act_right(u, &apply(t, v)))
}

/// `T(u) T(v) = T(T(u) v + u T(v))` on all basis pairs.
pub fn is_ooperator(ctx: &Context, t: &MMap) -> Result<CheckReport> {
    check_operator_shape(ctx, t)?;
    let mut rep = CheckReport::new("O-operator");
    let dm = ctx.dm();
    for ix in multi_indices(&[dm, dm]) {
        let (u, v) = (unit_vec(dm, ix[0]), unit_vec(dm, ix[1]));
        let lhs = ctx.alg.mul(&apply(t, &u), &apply(t, &v));
        let rhs = apply(t, &star(ctx, t, &u, &v));
        rep.expect_zero("T(u)T(v) = T(T(u)v + uT(v))", &ix, diff(&lhs, &rhs));
    }
    Ok(rep)
}

pub fn is_compatible_pair(p: &OperatorPair) -> Result<CheckReport> {
    let ctx = &p.ctx;
    let mut rep = CheckReport::new("compatible O-operator");
    let mut r1 = is_ooperator(ctx, &p.t1)?;
    r1.check = "T1".into();
    rep.absorb(r1);
    let mut r2 = is_ooperator(ctx, &p.t2)?;
    r2.check = "T2".into();
    rep.absorb(r2);
    let dm = ctx.dm();
    let (t1, t2) = (&p.t1, &p.t2);
    for ix in multi_indices(&[dm, dm]) {
        let (u, v) = (unit_vec(dm, ix[0]), unit_vec(dm, ix[1]));
        let lhs = add(
            &ctx.alg.mul(&apply(t1, &u), &apply(t2, &v)),
            &ctx.alg.mul(&apply(t2, &u), &apply(t1, &v)),
        );
        let rhs = add(&apply(t1, &star(ctx, t2, &u, &v)), &apply(t2, &star(ctx, t1, &u, &v)));
        rep.expect_zero(
            "T1(u)T2(v) + T2(u)T1(v) = T1(T2(u)v + uT2(v)) + T2(T1(u)v + uT1(v))",
            &ix,
            diff(&lhs, &rhs),
        );
    }
    let sum = is_ooperator(ctx, &p.sum())?;
    if rep.passed && !sum.passed {
        rep.fail("T1 + T2 fails although all componentwise identities hold", &[]);
    }
    Ok(rep)
}

fn require_compatible(p: &OperatorPair) -> Result<()> {
    let rep = is_compatible_pair(p)?;
    if !rep.passed {
        let what = rep.first_failure().map(|d| d.identity.clone()).unwrap_or_default();
        return Err(Error::Domain(format!("operators are not a compatible pair ({what})")));
    }
    Ok(())
}

/// `u * v = T(u) v + u T(v)` as an algebra on `M`.
pub fn induced_algebra(ctx: &Context, t: &MMap) -> Result<Algebra> {
    check_operator_shape(ctx, t)?;
    let dm = ctx.dm();
    let mu = Tensor::from_fn(vec![dm, dm], dm, |ix| {
        star(ctx, t, &unit_vec(dm, ix[0]), &unit_vec(dm, ix[1]))
    });
    Algebra::new(dm, mu)
}

/// `A` as a bimodule over `(M, *)`: `u . a = T(u) a - T(u a)` and
/// `a . u = a T(u) - T(a u)`.
pub fn induced_bimodule(ctx: &Context, t: &MMap) -> Result<Bimodule> {
    check_operator_shape(ctx, t)?;
    let (da, dm) = (ctx.da(), ctx.dm());
    let left = Tensor::from_fn(vec![dm, da], da, |ix| {
        let (u, a) = (unit_vec(dm, ix[0]), unit_vec(da, ix[1]));
        diff(&ctx.alg.mul(&apply(t, &u), &a), &apply(t, &ctx.bim.act_right(&u, &a)))
    });
    let right = Tensor::from_fn(vec![da, dm], da, |ix| {
        let (a, u) = (unit_vec(da, ix[0]), unit_vec(dm, ix[1]));
        diff(&ctx.alg.mul(&a, &apply(t, &u)), &apply(t, &ctx.bim.act_left(&a, &u)))
    });
    Bimodule::new(dm, da, left, right)
}

pub fn induced_compatible_algebra(p: &OperatorPair) -> Result<CompatibleAlgebra> {
    require_compatible(p)?;
    CompatibleAlgebra::new(induced_algebra(&p.ctx, &p.t1)?, induced_algebra(&p.ctx, &p.t2)?)
}

pub fn induced_compatible_bimodule(p: &OperatorPair) -> Result<CompatibleBimodule> {
    require_compatible(p)?;
    CompatibleBimodule::new(induced_bimodule(&p.ctx, &p.t1)?, induced_bimodule(&p.ctx, &p.t2)?)
}

/// `(φ, ψ)` from `from` to `to`; `phi` is `dim A' x dim A`, `psi` is
/// `dim M' x dim M`.
pub fn check_morphism(
    phi: &[Vec<Scalar>],
    psi: &[Vec<Scalar>],
    from: &OperatorPair,
    to: &OperatorPair,
) -> Result<CheckReport> {
    let (c, d) = (&from.ctx, &to.ctx);
    ensure_dims("phi rows", phi.len(), d.da())?;
    ensure_dims("psi rows", psi.len(), d.dm())?;
    for row in phi {
        ensure_dims("phi columns", row.len(), c.da())?;
    }
    for row in psi {
        ensure_dims("psi columns", row.len(), c.dm())?;
    }
    let mut rep = CheckReport::new("morphism");
    let (da, dm) = (c.da(), c.dm());
    for ix in multi_indices(&[da, da]) {
        let (a, b) = (unit_vec(da, ix[0]), unit_vec(da, ix[1]));
        let lhs = mat_vec(phi, &c.alg.mul(&a, &b));
        let rhs = d.alg.mul(&mat_vec(phi, &a), &mat_vec(phi, &b));
        rep.expect_zero("phi(ab) = phi(a)phi(b)", &ix, diff(&lhs, &rhs));
    }
    for u in 0..dm {
        let uv = unit_vec(dm, u);
        let lhs = mat_vec(phi, &apply(&from.t1, &uv));
        let rhs = apply(&to.t1, &mat_vec(psi, &uv));
        rep.expect_zero("phi T1 = T1' psi", &[u], diff(&lhs, &rhs));
        let lhs = mat_vec(phi, &apply(&from.t2, &uv));
        let rhs = apply(&to.t2, &mat_vec(psi, &uv));
        rep.expect_zero("phi T2 = T2' psi", &[u], diff(&lhs, &rhs));
    }
    for ix in multi_indices(&[da, dm]) {
        let (a, u) = (unit_vec(da, ix[0]), unit_vec(dm, ix[1]));
        let lhs = mat_vec(psi, &c.bim.act_left(&a, &u));
        let rhs = d.bim.act_left(&mat_vec(phi, &a), &mat_vec(psi, &u));
        rep.expect_zero("psi(au) = phi(a)psi(u)", &ix, diff(&lhs, &rhs));
        let lhs = mat_vec(psi, &c.bim.act_right(&u, &a));
        let rhs = d.bim.act_right(&mat_vec(psi, &u), &mat_vec(phi, &a));
        rep.expect_zero("psi(ua) = psi(u)phi(a)", &[ix[1], ix[0]], diff(&lhs, &rhs));
    }
    Ok(rep)
}

/// `Σ r[i][j] e_i ⊗ e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTensor {
    r: Vec<Vec<Scalar>>,
}

impl TwoTensor {
    pub fn new(r: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = r.len();
        for (i, row) in r.iter().enumerate() {
            ensure_dims(&format!("r[{i}]"), row.len(), d)?;
        }
        Ok(TwoTensor { r })
    }

    pub fn from_ints(r: &[&[i64]]) -> Self {
        TwoTensor { r: r.iter().map(|row| row.iter().map(|&x| Scalar::from_int(x)).collect()).collect() }
    }

    pub fn zero(d: usize) -> Self {
        TwoTensor { r: vec![zero_vec(d); d] }
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.r[i][j]
    }

    pub fn scaled(&self, c: &Scalar) -> TwoTensor {
        TwoTensor { r: self.r.iter().map(|row| row.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn plus(&self, o: &TwoTensor) -> TwoTensor {
        TwoTensor { r: self.r.iter().zip(&o.r).map(|(a, b)| add(a, b)).collect() }
    }

    /// Flip of the two factors.
    pub fn transposed(&self) -> TwoTensor {
        let d = self.dim();
        TwoTensor { r: (0..d).map(|i| (0..d).map(|j| self.r[j][i].clone()).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().flatten().all(Scalar::is_zero)
    }
}

pub fn is_skew(r: &TwoTensor) -> bool {
    r.plus(&r.transposed()).is_zero()
}

/// `a^{13} b^{12} - a^{12} b^{23} + a^{23} b^{13}` as coefficients on
/// `e_p ⊗ e_q ⊗ e_s`.
fn yang_baxter_form(alg: &Algebra, a: &TwoTensor, b: &TwoTensor) -> Tensor {
    let d = alg.dim();
    let mut out = Tensor::zeros(vec![d, d], d);
    for ix in multi_indices(&[d, d, d, d]) {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        let (x, y) = (a.get(i, j), b.get(k, l));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let c = x * y;
        // a^{13} b^{12} = e_i e_k ⊗ e_l ⊗ e_j
        for (p, v) in alg.mul_basis(i, k).iter().enumerate() {
            if !v.is_zero() {
                out.slot_mut(&[p, l])[j] += &c * v;
            }
        }
        // a^{12} b^{23} = e_i ⊗ e_j e_k ⊗ e_l
        for (q, v) in alg.mul_basis(j, k).iter().enumerate() {
            if !v.is_zero() {
                out.slot_mut(&[i, q])[l] -= &c * v;
            }
        }
        // a^{23} b^{13} = e_k ⊗ e_i ⊗ e_j e_l
        let s = alg.mul_basis(j, l);
        for (t, v) in s.iter().enumerate() {
            if !v.is_zero() {
                out.slot_mut(&[k, i])[t] += &c * v;
            }
        }
    }
    out
}

fn report_tensor(name: &str, identity: &str, t: &Tensor) -> CheckReport {
    let mut rep = CheckReport::new(name);
    let d = t.out_dim();
    for ix in multi_indices(t.in_dims()) {
        for s in 0..d {
            let x = &t.slot(&ix)[s];
            if !x.is_zero() {
                rep.expect_zero(identity, &[ix[0], ix[1], s], vec![x.clone()]);
            }
        }
    }
    rep
}

pub fn aybe_check(alg: &Algebra, r: &TwoTensor) -> Result<CheckReport> {
    ensure_dims("two-tensor dimension", r.dim(), alg.dim())?;
    let t = yang_baxter_form(alg, r, r);
    Ok(report_tensor("associative Yang-Baxter", "r13 r12 - r12 r23 + r23 r13 = 0", &t))
}

/// The mixed six-term identity; the componentwise equations are checked
/// separately by [`aybe_check`].
pub fn compatible_aybe_check(alg: &Algebra, r1: &TwoTensor, r2: &TwoTensor) -> Result<CheckReport> {
    ensure_dims("two-tensor dimension", r1.dim(), alg.dim())?;
    ensure_dims("two-tensor dimension", r2.dim(), alg.dim())?;
    let mut rep = CheckReport::new("compatible associative Yang-Baxter");
    let mut a = aybe_check(alg, r1)?;
    a.check = "r1".into();
    rep.absorb(a);
    let mut b = aybe_check(alg, r2)?;
    b.check = "r2".into();
    rep.absorb(b);
    let mut t = yang_baxter_form(alg, r1, r2);
    t.add_assign(&yang_baxter_form(alg, r2, r1));
    let mut mixed = report_tensor("mixed", "six-term mixed identity", &t);
    mixed.check = "mixed".into();
    rep.absorb(mixed);
    Ok(rep)
}

/// `T(a) = Σ r[i][j] e_i a e_j` on the adjoint bimodule.
pub fn rb_from_tensor(alg: &Algebra, r: &TwoTensor) -> Result<LinOp> {
    ensure_dims("two-tensor dimension", r.dim(), alg.dim())?;
    let d = alg.dim();
    let mut m = vec![zero_vec(d); d];
    for c in 0..d {
        let mut col = zero_vec(d);
        for ix in multi_indices(&[d, d]) {
            let x = r.get(ix[0], ix[1]);
            if x.is_zero() {
                continue;
            }
            let ea = alg.mul(alg.mul_basis(ix[0], c), &alg.unit(ix[1]));
            crate::scalar::axpy(&mut col, x, &ea);
        }
        for (k, v) in col.into_iter().enumerate() {
            m[k][c] = v;
        }
    }
    LinOp::from_matrix(Context::adjoint(alg.clone()), &m)
}

/// `r♯(f) = Σ f(r[2]) r[1]` on the coadjoint bimodule; its matrix is `r`.
pub fn sharp(alg: &Algebra, r: &TwoTensor) -> Result<LinOp> {
    ensure_dims("two-tensor dimension", r.dim(), alg.dim())?;
    let ctx = Context::new(alg.clone(), coadjoint_bimodule(alg))?;
    LinOp::from_matrix(ctx, r.entries())
}

/// `l_T(u, a) - r_T(a, u) = T(u) a - T(u a) - a T(u) + T(a u)`.
fn nij_commutator(ctx: &Context, t: &MMap, a0: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
    let tu = apply(t, u);
    let l = diff(&ctx.alg.mul(&tu, a0), &apply(t, &ctx.bim.act_right(u, a0)));
    let r = diff(&ctx.alg.mul(a0, &tu), &apply(t, &ctx.bim.act_left(a0, u)));
    diff(&l, &r)
}

fn nijenhuis_single(ctx: &Context, t: &MMap, a0: &[Scalar], rep: &mut CheckReport, name: &str) {
    let dm = ctx.dm();
    for u in 0..dm {
        let x = nij_commutator(ctx, t, a0, &unit_vec(dm, u));
        let v = diff(&ctx.alg.mul(a0, &x), &ctx.alg.mul(&x, a0));
        rep.expect_zero(name, &[u], v);
    }
}

/// The five Nijenhuis identities. The last two are quadratic in `a`; they
/// vanish for every `a` exactly when their polarizations `B(a, b) + B(b, a)`
/// vanish on all basis pairs, which is what is checked.
pub fn nijenhuis_check(a0: &[Scalar], p: &OperatorPair) -> Result<CheckReport> {
    let ctx = &p.ctx;
    ensure_dims("a0 length", a0.len(), ctx.da())?;
    let mut rep = CheckReport::new("Nijenhuis element");
    let (da, dm) = (ctx.da(), ctx.dm());
    let ad = |a: &[Scalar]| diff(&ctx.alg.mul(a0, a), &ctx.alg.mul(a, a0));
    let comm = |a: &[Scalar], u: &[Scalar]| diff(&ctx.bim.act_left(a, u), &ctx.bim.act_right(u, a));
    for ix in multi_indices(&[da, da]) {
        let (a, b) = (unit_vec(da, ix[0]), unit_vec(da, ix[1]));
        rep.expect_zero("[a0,a][a0,b] = 0", &ix, ctx.alg.mul(&ad(&a), &ad(&b)));
    }
    nijenhuis_single(ctx, &p.t1, a0, &mut rep, "[a0, l_T1(u,a0) - r_T1(a0,u)] = 0");
    nijenhuis_single(ctx, &p.t2, a0, &mut rep, "[a0, l_T2(u,a0) - r_T2(a0,u)] = 0");
    for ix in multi_indices(&[da, da, dm]) {
        let (a, b, u) = (unit_vec(da, ix[0]), unit_vec(da, ix[1]), unit_vec(dm, ix[2]));
        let fourth = add(&ctx.bim.act_left(&ad(&a), &comm(&b, &u)), &ctx.bim.act_left(&ad(&b), &comm(&a, &u)));
        rep.expect_zero("[a0,a].(au - ua) = 0 (polarized)", &ix, fourth);
        let fifth = add(&ctx.bim.act_right(&comm(&a, &u), &ad(&b)), &ctx.bim.act_right(&comm(&b, &u), &ad(&a)));
        rep.expect_zero("(au - ua).[a0,a] = 0 (polarized)", &ix, fifth);
    }
    Ok(rep)
}

/// Nijenhuis conditions for a single operator: the identities above with
/// `T1 = T2 = T`.
pub fn nijenhuis_check_single(a0: &[Scalar], ctx: &Context, t: &MMap) -> Result<CheckReport> {
    nijenhuis_check(a0, &OperatorPair::new(ctx.clone(), t.clone(), t.clone())?)
}
