//! Finite-order deformations of compatible O-operators and of compatible
//! O-operator algebras: deformation equations, infinitesimals, equivalences,
//! obstructions and extensions.

use serde::Serialize;

use crate::algebra::{Algebra, Bimodule};
use crate::cochain::{lifted_bracket, Context, MMap, TupleCochain};
use crate::cohomology::{delta_pair, PairComplex};
use crate::complex::coboundary_matrix;
use crate::error::{ensure_dims, Error, Result};
use crate::linalg::{kernel_basis, rank, solve};
use crate::linfty::{delta_coa, LInftyElement};
use crate::mixed::{MixedMap, Signature, Space};
use crate::operators::{nijenhuis_check, OperatorPair};
use crate::report::CheckReport;
use crate::scalar::{axpy, unit_vec, zero_vec, Scalar};
use crate::tensor::{mat_identity, mat_vec, Tensor};

pub type Mat = Vec<Vec<Scalar>>;

/// `T_{k,t} = Σ_{i <= N} t^i T_{k,i}` for `k = 1, 2`, over a fixed context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDeformation {
    pub ctx: Context,
    pub t1: Vec<MMap>,
    pub t2: Vec<MMap>,
}

impl PairDeformation {
    pub fn new(ctx: Context, t1: Vec<MMap>, t2: Vec<MMap>) -> Result<Self> {
        if t1.is_empty() || t1.len() != t2.len() {
            return Err(Error::Input("T1 and T2 need the same nonzero number of terms".into()));
        }
        for t in t1.iter().chain(&t2) {
            check_operator(&ctx, t)?;
        }
        Ok(PairDeformation { ctx, t1, t2 })
    }

    /// The order-0 deformation of a pair.
    pub fn trivial(p: &OperatorPair) -> Self {
        PairDeformation { ctx: p.ctx.clone(), t1: vec![p.t1.clone()], t2: vec![p.t2.clone()] }
    }

    pub fn order(&self) -> usize {
        self.t1.len() - 1
    }

    pub fn base(&self) -> OperatorPair {
        OperatorPair::new(self.ctx.clone(), self.t1[0].clone(), self.t2[0].clone()).expect("shapes checked")
    }

    /// `(T_{1,i}, T_{2,i})` as a degree-1 cochain.
    pub fn term(&self, i: usize) -> TupleCochain {
        TupleCochain::pair(self.t1[i].clone(), self.t2[i].clone()).expect("shapes checked")
    }

    /// Appends `t^{N+1} (s1, s2)`.
    pub fn extended(&self, s1: MMap, s2: MMap) -> Result<Self> {
        check_operator(&self.ctx, &s1)?;
        check_operator(&self.ctx, &s2)?;
        let mut out = self.clone();
        out.t1.push(s1);
        out.t2.push(s2);
        Ok(out)
    }

    /// The same data as a deformation of the whole structure with the
    /// product and actions held fixed.
    pub fn as_full(&self) -> FullDeformation {
        FullDeformation {
            da: self.ctx.da(),
            dm: self.ctx.dm(),
            mu: vec![self.ctx.alg.mu().clone()],
            l: vec![self.ctx.bim.left().clone()],
            r: vec![self.ctx.bim.right().clone()],
            t1: self.t1.clone(),
            t2: self.t2.clone(),
        }
        .padded()
    }
}

fn check_operator(ctx: &Context, t: &MMap) -> Result<()> {
    if t.arity() != 1 || t.da() != ctx.da() || t.dm() != ctx.dm() {
        return Err(Error::Input(format!(
            "operator must be a {} x {} matrix",
            ctx.da(),
            ctx.dm()
        )));
    }
    Ok(())
}

/// `μ_t, l_t, r_t, T_{1,t}, T_{2,t}` truncated at order `N`; index 0 holds
/// the undeformed structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullDeformation {
    pub da: usize,
    pub dm: usize,
    pub mu: Vec<Tensor>,
    pub l: Vec<Tensor>,
    pub r: Vec<Tensor>,
    pub t1: Vec<MMap>,
    pub t2: Vec<MMap>,
}

impl FullDeformation {
    pub fn new(
        da: usize,
        dm: usize,
        mu: Vec<Tensor>,
        l: Vec<Tensor>,
        r: Vec<Tensor>,
        t1: Vec<MMap>,
        t2: Vec<MMap>,
    ) -> Result<Self> {
        let n = mu.len();
        if n == 0 || [l.len(), r.len(), t1.len(), t2.len()].iter().any(|&k| k != n) {
            return Err(Error::Input("all five lists need the same nonzero length".into()));
        }
        for m in &mu {
            shape(m, &[da, da], da, "mu")?;
        }
        for m in &l {
            shape(m, &[da, dm], dm, "l")?;
        }
        for m in &r {
            shape(m, &[dm, da], dm, "r")?;
        }
        for t in t1.iter().chain(&t2) {
            if t.arity() != 1 || t.da() != da || t.dm() != dm {
                return Err(Error::Input(format!("operator must be a {da} x {dm} matrix")));
            }
        }
        Ok(FullDeformation { da, dm, mu, l, r, t1, t2 })
    }

    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    /// Fills missing structure terms with zeros up to the operator order.
    fn padded(mut self) -> Self {
        let n = self.t1.len();
        let (da, dm) = (self.da, self.dm);
        self.mu.resize(n, Tensor::zeros(vec![da, da], da));
        self.l.resize(n, Tensor::zeros(vec![da, dm], dm));
        self.r.resize(n, Tensor::zeros(vec![dm, da], dm));
        self
    }

    pub fn base_context(&self) -> Result<Context> {
        let alg = Algebra::new(self.da, self.mu[0].clone())?;
        let bim = Bimodule::new(self.da, self.dm, self.l[0].clone(), self.r[0].clone())?;
        Context::new(alg, bim)
    }

    pub fn base_pair(&self) -> Result<OperatorPair> {
        OperatorPair::new(self.base_context()?, self.t1[0].clone(), self.t2[0].clone())
    }

    fn same_base(&self, o: &FullDeformation) -> bool {
        (self.da, self.dm) == (o.da, o.dm)
            && self.mu[0] == o.mu[0]
            && self.l[0] == o.l[0]
            && self.r[0] == o.r[0]
            && self.t1[0] == o.t1[0]
            && self.t2[0] == o.t2[0]
    }
}

fn shape(t: &Tensor, ins: &[usize], out: usize, what: &str) -> Result<()> {
    if t.in_dims() != ins || t.out_dim() != out {
        return Err(Error::Input(format!("{what} tensor has the wrong shape")));
    }
    Ok(())
}

fn ev2(t: &Tensor, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    t.eval(&[a, b])
}

fn ev1(t: &MMap, u: &[Scalar]) -> Vec<Scalar> {
    t.eval(&[u])
}

fn add(a: &mut [Scalar], b: &[Scalar]) {
    axpy(a, &Scalar::one(), b);
}

fn sub(a: &mut [Scalar], b: &[Scalar]) {
    axpy(a, &-Scalar::one(), b);
}

/// `Σ_{i+j+k=n} μ_i(S_j u, T_k v) - S_i(l_j(T_k u, v) + r_j(u, T_k v))`.
fn operator_form(d: &FullDeformation, s: &[MMap], t: &[MMap], n: usize, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = zero_vec(d.da);
    for i in 0..=n {
        for j in 0..=n - i {
            let k = n - i - j;
            add(&mut out, &ev2(&d.mu[i], &ev1(&s[j], u), &ev1(&t[k], v)));
            let mut inner = ev2(&d.l[j], &ev1(&t[k], u), v);
            add(&mut inner, &ev2(&d.r[j], u, &ev1(&t[k], v)));
            sub(&mut out, &ev1(&s[i], &inner));
        }
    }
    out
}

fn operator_families(d: &FullDeformation, rep: &mut CheckReport) {
    let dm = d.dm;
    for n in 0..=d.order() {
        for a in 0..dm {
            for b in 0..dm {
                let (u, v) = (unit_vec(dm, a), unit_vec(dm, b));
                rep.expect_zero("T1 deformation equation", &[n, a, b], operator_form(d, &d.t1, &d.t1, n, &u, &v));
                rep.expect_zero("T2 deformation equation", &[n, a, b], operator_form(d, &d.t2, &d.t2, n, &u, &v));
                let mut mixed = operator_form(d, &d.t1, &d.t2, n, &u, &v);
                add(&mut mixed, &operator_form(d, &d.t2, &d.t1, n, &u, &v));
                rep.expect_zero("mixed deformation equation", &[n, a, b], mixed);
            }
        }
    }
}

/// The three convolution identities for `n = 0..=N`, together with the
/// equivalent form `δ(T_{1,n}, T_{2,n}) = -1/2 Σ_{i+j=n, i,j>=1} ⟦x_i, x_j⟧`.
/// A disagreement between the two formulations is a logic error.
pub fn check_pair_deformation(d: &PairDeformation) -> Result<CheckReport> {
    let mut rep = CheckReport::new("pair deformation");
    operator_families(&d.as_full(), &mut rep);
    let mut half = CheckReport::new("pair deformation, bracket form");
    for n in 0..=d.order() {
        let z = half_defect(d, n)?;
        half.expect_zero("δ(x_n) + 1/2 Σ ⟦x_i, x_j⟧", &[n], z.coords());
    }
    if half.passed != rep.passed {
        return Err(Error::Logic(format!(
            "deformation equations and their bracket form disagree ({} vs {})",
            rep.passed, half.passed
        )));
    }
    Ok(rep)
}

/// `⟦x_0, x_n⟧ + 1/2 Σ_{i+j=n, i,j>=1} ⟦x_i, x_j⟧`, or `⟦x_0, x_0⟧` at `n = 0`.
fn half_defect(d: &PairDeformation, n: usize) -> Result<TupleCochain> {
    let x0 = d.term(0);
    let mut z = lifted_bracket(&d.ctx, &x0, &d.term(n))?;
    if n == 0 {
        return Ok(z);
    }
    let half = Scalar::ratio(1, 2);
    for i in 1..n {
        let b = lifted_bracket(&d.ctx, &d.term(i), &d.term(n - i))?;
        z = z.plus(&b.scaled(&half));
    }
    Ok(z)
}

#[derive(Clone, Debug, Serialize)]
pub struct Infinitesimal<C> {
    pub cochain: C,
    /// Whether the cochain is a cocycle, with the defect if not.
    pub cocycle: CheckReport,
}

/// `(T_{1,1}, T_{2,1})` and whether it is a 1-cocycle.
pub fn infinitesimal(d: &PairDeformation) -> Result<Infinitesimal<TupleCochain>> {
    if d.order() == 0 {
        return Err(Error::Domain("an order-0 deformation has no infinitesimal".into()));
    }
    let x = d.term(1);
    let dx = delta_pair(&d.base(), &x)?;
    let mut cocycle = CheckReport::new("infinitesimal is a 1-cocycle");
    cocycle.expect_zero("δ(T_{1,1}, T_{2,1}) = 0", &[], dx.coords());
    Ok(Infinitesimal { cochain: x, cocycle })
}

/// Candidate equivalence between pair deformations:
/// `φ_t = id + t(ad^l_{a0} - ad^r_{a0}) + Σ_{i>=2} t^i φ_i` and
/// `ψ_t = id + t(l_{a0} - r_{a0}) + Σ_{i>=2} t^i ψ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEquivalence {
    pub a0: Vec<Scalar>,
    pub higher_phi: Vec<Mat>,
    pub higher_psi: Vec<Mat>,
}

impl PairEquivalence {
    pub fn from_element(a0: Vec<Scalar>) -> Self {
        PairEquivalence { a0, higher_phi: Vec::new(), higher_psi: Vec::new() }
    }

    /// The full `(φ_i, ψ_i)` lists starting at `i = 0`.
    fn expand(&self, ctx: &Context) -> Result<FullEquivalence> {
        let (da, dm) = (ctx.da(), ctx.dm());
        ensure_dims("a0", self.a0.len(), da)?;
        if self.higher_phi.len() != self.higher_psi.len() {
            return Err(Error::Input("higher φ and ψ lists differ in length".into()));
        }
        let phi1: Mat = transpose(
            (0..da)
                .map(|j| {
                    let e = unit_vec(da, j);
                    let mut v = ctx.alg.mul(&self.a0, &e);
                    sub(&mut v, &ctx.alg.mul(&e, &self.a0));
                    v
                })
                .collect(),
        );
        let psi1: Mat = transpose(
            (0..dm)
                .map(|j| {
                    let e = unit_vec(dm, j);
                    let mut v = ctx.bim.act_left(&self.a0, &e);
                    sub(&mut v, &ctx.bim.act_right(&e, &self.a0));
                    v
                })
                .collect(),
        );
        let mut phi = vec![mat_identity(da), phi1];
        let mut psi = vec![mat_identity(dm), psi1];
        phi.extend(self.higher_phi.iter().cloned());
        psi.extend(self.higher_psi.iter().cloned());
        FullEquivalence::new(da, dm, phi, psi)
    }
}

fn transpose(cols: Vec<Vec<Scalar>>) -> Mat {
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// `φ_t = Σ t^i φ_i`, `ψ_t = Σ t^i ψ_i` with `φ_0 = id`, `ψ_0 = id`.
/// Matrices act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullEquivalence {
    pub phi: Vec<Mat>,
    pub psi: Vec<Mat>,
}

impl FullEquivalence {
    pub fn new(da: usize, dm: usize, phi: Vec<Mat>, psi: Vec<Mat>) -> Result<Self> {
        if phi.is_empty() || phi.len() != psi.len() {
            return Err(Error::Input("φ and ψ need the same nonzero number of terms".into()));
        }
        for (m, d, what) in phi.iter().map(|m| (m, da, "φ")).chain(psi.iter().map(|m| (m, dm, "ψ"))) {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::Input(format!("{what} must be {d} x {d}")));
            }
        }
        if phi[0] != mat_identity(da) || psi[0] != mat_identity(dm) {
            return Err(Error::Input("φ_0 and ψ_0 must be identities".into()));
        }
        Ok(FullEquivalence { phi, psi })
    }

    pub fn order(&self) -> usize {
        self.phi.len() - 1
    }

    fn phi(&self, i: usize, a: &[Scalar]) -> Vec<Scalar> {
        match self.phi.get(i) {
            Some(m) => mat_vec(m, a),
            None => zero_vec(a.len()),
        }
    }

    fn psi(&self, i: usize, u: &[Scalar]) -> Vec<Scalar> {
        match self.psi.get(i) {
            Some(m) => mat_vec(m, u),
            None => zero_vec(u.len()),
        }
    }
}

/// The five morphism families of `(φ_t, ψ_t)` from `d` to `e` for
/// `n = 0..=order`.
fn morphism_families(d: &FullDeformation, e: &FullDeformation, q: &FullEquivalence, order: usize, rep: &mut CheckReport) {
    let (da, dm) = (d.da, d.dm);
    for n in 0..=order {
        for x in 0..da {
            for y in 0..da {
                let (a, b) = (unit_vec(da, x), unit_vec(da, y));
                let mut lhs = zero_vec(da);
                for i in 0..=n {
                    add(&mut lhs, &q.phi(i, &ev2(&d.mu[n - i], &a, &b)));
                }
                for i in 0..=n {
                    for j in 0..=n - i {
                        sub(&mut lhs, &ev2(&e.mu[i], &q.phi(j, &a), &q.phi(n - i - j, &b)));
                    }
                }
                rep.expect_zero("φ_t μ_t = μ'_t(φ_t, φ_t)", &[n, x, y], lhs);
            }
            for y in 0..dm {
                let (a, u) = (unit_vec(da, x), unit_vec(dm, y));
                let mut left = zero_vec(dm);
                let mut right = zero_vec(dm);
                for i in 0..=n {
                    add(&mut left, &q.psi(i, &ev2(&d.l[n - i], &a, &u)));
                    add(&mut right, &q.psi(i, &ev2(&d.r[n - i], &u, &a)));
                }
                for i in 0..=n {
                    for j in 0..=n - i {
                        let k = n - i - j;
                        sub(&mut left, &ev2(&e.l[i], &q.phi(j, &a), &q.psi(k, &u)));
                        sub(&mut right, &ev2(&e.r[i], &q.psi(j, &u), &q.phi(k, &a)));
                    }
                }
                rep.expect_zero("ψ_t l_t = l'_t(φ_t, ψ_t)", &[n, x, y], left);
                rep.expect_zero("ψ_t r_t = r'_t(ψ_t, φ_t)", &[n, y, x], right);
            }
        }
        for y in 0..dm {
            let u = unit_vec(dm, y);
            for (k, (t, s)) in [(&d.t1, &e.t1), (&d.t2, &e.t2)].into_iter().enumerate() {
                let mut diff = zero_vec(da);
                for i in 0..=n {
                    add(&mut diff, &q.phi(i, &ev1(&t[n - i], &u)));
                    sub(&mut diff, &ev1(&s[i], &q.psi(n - i, &u)));
                }
                let name = if k == 0 { "φ_t T_{1,t} = T'_{1,t} ψ_t" } else { "φ_t T_{2,t} = T'_{2,t} ψ_t" };
                rep.expect_zero(name, &[n, y], diff);
            }
        }
    }
}

/// Checks `(T_{1,1}, T_{2,1}) - (T'_{1,1}, T'_{2,1}) = δ(a0)` and the morphism
/// conditions up to the lowest order among `d`, `d'` and the supplied maps.
pub fn check_pair_equivalence(d: &PairDeformation, e: &PairDeformation, q: &PairEquivalence) -> Result<CheckReport> {
    if d.ctx != e.ctx || d.t1[0] != e.t1[0] || d.t2[0] != e.t2[0] {
        return Err(Error::Input("deformations of different pairs".into()));
    }
    let full_q = q.expand(&d.ctx)?;
    let mut rep = CheckReport::new("pair deformation equivalence");
    if d.order() >= 1 && e.order() >= 1 {
        let a0 = TupleCochain::new(0, vec![MMap::constant(q.a0.clone())])?;
        let da0 = delta_pair(&d.base(), &a0)?;
        let diff = d.term(1).plus(&e.term(1).scaled(&-Scalar::one()));
        rep.expect_zero("x_1 - x'_1 = δ(a0)", &[], crate::report::diff(&diff.coords(), &da0.coords()));
    }
    let order = d.order().min(e.order()).min(full_q.order());
    morphism_families(&d.as_full(), &e.as_full(), &full_q, order, &mut rep);
    Ok(rep)
}

/// `Ob = -1/2 Σ_{i+j=N+1, i,j>=1} ⟦x_i, x_j⟧`, checked to be a 2-cocycle.
pub fn obstruction(d: &PairDeformation) -> Result<TupleCochain> {
    if !check_pair_deformation(d)?.passed {
        return Err(Error::Domain("not an order-N deformation".into()));
    }
    obstruction_unchecked(d)
}

fn obstruction_unchecked(d: &PairDeformation) -> Result<TupleCochain> {
    let n = d.order() + 1;
    let (da, dm) = (d.ctx.da(), d.ctx.dm());
    let mut ob = TupleCochain::zero(2, da, dm);
    let c = Scalar::ratio(-1, 2);
    for i in 1..n {
        ob = ob.plus(&lifted_bracket(&d.ctx, &d.term(i), &d.term(n - i))?.scaled(&c));
    }
    if !delta_pair(&d.base(), &ob)?.is_zero() {
        return Err(Error::Logic("obstruction is not a 2-cocycle".into()));
    }
    Ok(ob)
}

#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    /// `(T_{1,N+1}, T_{2,N+1})` when the obstruction is a coboundary.
    pub witness: Option<TupleCochain>,
    pub obstruction: TupleCochain,
    /// `rank δ_1` and `rank [δ_1 | Ob]`; they differ exactly when no
    /// witness exists.
    pub rank_delta: usize,
    pub rank_augmented: usize,
}

/// Solves `δ(T_{1,N+1}, T_{2,N+1}) = Ob`. A returned witness has been
/// re-verified as an order `N+1` deformation.
pub fn is_extensible(d: &PairDeformation) -> Result<Extension> {
    let ob = obstruction(d)?;
    let complex = PairComplex::new(d.base())?;
    let m = coboundary_matrix(&complex, 1)?;
    let b = ob.coords();
    let rank_delta = rank(&m);
    let rank_augmented = rank(&m.augment(&b)?);
    let (da, dm) = (d.ctx.da(), d.ctx.dm());
    let witness = match solve(&m, &b)? {
        Some(x) => {
            let w = TupleCochain::from_coords(1, da, dm, &x)?;
            let ext = d.extended(w.parts()[0].clone(), w.parts()[1].clone())?;
            if !check_pair_deformation(&ext)?.passed {
                return Err(Error::Logic("extension solving δx = Ob is not a deformation".into()));
            }
            Some(w)
        }
        None => None,
    };
    if witness.is_some() != (rank_delta == rank_augmented) {
        return Err(Error::Logic("solver and rank certificate disagree".into()));
    }
    Ok(Extension { witness, obstruction: ob, rank_delta, rank_augmented })
}

/// `μ_i + l_i + r_i` as one bidegree `1|0` map.
fn structure_term(d: &FullDeformation, i: usize) -> Result<MixedMap> {
    MixedMap::from_products(d.da, d.dm, &d.mu[i], &d.l[i], &d.r[i])
}

/// The seven convolution families: associativity, the three bimodule
/// families and the three operator families, for `n = 0..=N`.
pub fn check_full_deformation(d: &FullDeformation) -> Result<CheckReport> {
    let (da, dm) = (d.da, d.dm);
    let mut rep = CheckReport::new("full deformation");
    for n in 0..=d.order() {
        for x in 0..da {
            for y in 0..da {
                let (a, b) = (unit_vec(da, x), unit_vec(da, y));
                for z in 0..da {
                    let c = unit_vec(da, z);
                    let mut v = zero_vec(da);
                    for i in 0..=n {
                        add(&mut v, &ev2(&d.mu[i], &ev2(&d.mu[n - i], &a, &b), &c));
                        sub(&mut v, &ev2(&d.mu[i], &a, &ev2(&d.mu[n - i], &b, &c)));
                    }
                    rep.expect_zero("associativity", &[n, x, y, z], v);
                }
                for w in 0..dm {
                    let u = unit_vec(dm, w);
                    let mut left = zero_vec(dm);
                    let mut mid = zero_vec(dm);
                    let mut right = zero_vec(dm);
                    for i in 0..=n {
                        let j = n - i;
                        add(&mut left, &ev2(&d.l[i], &ev2(&d.mu[j], &a, &b), &u));
                        sub(&mut left, &ev2(&d.l[i], &a, &ev2(&d.l[j], &b, &u)));
                        add(&mut mid, &ev2(&d.r[i], &ev2(&d.l[j], &a, &u), &b));
                        sub(&mut mid, &ev2(&d.l[i], &a, &ev2(&d.r[j], &u, &b)));
                        add(&mut right, &ev2(&d.r[i], &u, &ev2(&d.mu[j], &a, &b)));
                        sub(&mut right, &ev2(&d.r[i], &ev2(&d.r[j], &u, &a), &b));
                    }
                    rep.expect_zero("left action", &[n, x, y, w], left);
                    rep.expect_zero("two-sided action", &[n, x, w, y], mid);
                    rep.expect_zero("right action", &[n, w, x, y], right);
                }
            }
        }
    }
    operator_families(d, &mut rep);
    Ok(rep)
}

/// `((μ_1 + l_1 + r_1), (T_{1,1}, T_{2,1}))` and whether it is a 2-cocycle.
pub fn full_infinitesimal(d: &FullDeformation) -> Result<Infinitesimal<LInftyElement>> {
    if d.order() == 0 {
        return Err(Error::Domain("an order-0 deformation has no infinitesimal".into()));
    }
    let x = LInftyElement::new(0, structure_term(d, 1)?, vec![d.t1[1].clone(), d.t2[1].clone()])?;
    let dx = delta_coa(&d.base_pair()?, &x)?;
    let mut cocycle = CheckReport::new("infinitesimal is a 2-cocycle");
    cocycle.expect_zero("δ_cOA(infinitesimal) = 0", &[], dx.coords());
    Ok(Infinitesimal { cochain: x, cocycle })
}

/// Checks the morphism families up to the lowest available order and the
/// order-1 consequence `x_1 - x'_1 = δ_cOA(φ_1, ψ_1)`.
pub fn check_full_equivalence(d: &FullDeformation, e: &FullDeformation, q: &FullEquivalence) -> Result<CheckReport> {
    if !d.same_base(e) {
        return Err(Error::Input("deformations of different structures".into()));
    }
    FullEquivalence::new(d.da, d.dm, q.phi.clone(), q.psi.clone())?;
    let mut rep = CheckReport::new("full deformation equivalence");
    if d.order() >= 1 && e.order() >= 1 && q.order() >= 1 {
        let x = full_infinitesimal(d)?.cochain;
        let y = full_infinitesimal(e)?.cochain;
        let v = endomorphisms(d.da, d.dm, &q.phi[1], &q.psi[1])?;
        let g = delta_coa(&d.base_pair()?, &LInftyElement::from_vprime(-1, v, true)?)?;
        let diff = x.plus(&y.scaled(&-Scalar::one()));
        rep.expect_zero("x_1 - x'_1 = δ_cOA(φ_1, ψ_1)", &[], crate::report::diff(&diff.coords(), &g.coords()));
    }
    let order = d.order().min(e.order()).min(q.order());
    morphism_families(d, e, q, order, &mut rep);
    Ok(rep)
}

fn endomorphisms(da: usize, dm: usize, phi: &Mat, psi: &Mat) -> Result<MixedMap> {
    let mut v = MixedMap::zero(1, da, dm);
    let tp = Tensor::from_fn(vec![da], da, |ix| phi.iter().map(|row| row[ix[0]].clone()).collect());
    let ts = Tensor::from_fn(vec![dm], dm, |ix| psi.iter().map(|row| row[ix[0]].clone()).collect());
    v.add_component(Signature::new(vec![Space::A], Space::A), &tp)?;
    v.add_component(Signature::new(vec![Space::M], Space::M), &ts)?;
    Ok(v)
}

/// All `a0` with `δ(a0) = z`: a particular solution plus a basis of the
/// kernel of `δ_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

pub fn coboundary_preimage(p: &OperatorPair, z: &TupleCochain) -> Result<Option<AffineSolution>> {
    if z.degree() != 1 {
        return Err(Error::Input("expected a degree-1 cochain".into()));
    }
    if !delta_pair(p, z)?.is_zero() {
        return Err(Error::Domain("cochain is not a 1-cocycle".into()));
    }
    let complex = PairComplex::new(p.clone())?;
    let m = coboundary_matrix(&complex, 0)?;
    let Some(particular) = solve(&m, &z.coords())? else {
        return Ok(None);
    };
    let kernel = kernel_basis(&m).basis().to_vec();
    Ok(Some(AffineSolution { particular, kernel }))
}

/// Searches `particular + Σ c_i k_i` with every `c_i` drawn from `coeffs`
/// for a Nijenhuis element, which makes the cocycle a trivial direction.
pub fn nijenhuis_preimage(p: &OperatorPair, sol: &AffineSolution, coeffs: &[i64]) -> Result<Option<Vec<Scalar>>> {
    for choice in crate::tensor::multi_indices(&vec![coeffs.len(); sol.kernel.len()]) {
        let mut a0 = sol.particular.clone();
        for (k, &c) in sol.kernel.iter().zip(&choice) {
            axpy(&mut a0, &Scalar::from_int(coeffs[c]), k);
        }
        if nijenhuis_check(&a0, p)?.passed {
            return Ok(Some(a0));
        }
    }
    Ok(None)
}
