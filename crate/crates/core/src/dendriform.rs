//! Compatible dendriform algebras: axiom checks, labeled cochains with the
//! partial compositions `∘_i` and the brace bracket, the cohomology complex,
//! and the constructions linking them to compatible associative, pre-Lie and
//! Lie algebras and to compatible O-operators.
//!
//! Labels `[r]` are 1-based in every public function; `DendCochain::label(r)`
//! takes `r` in `1..=arity`.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{add, Algebra, CompatibleAlgebra, CompatibleBimodule};
use crate::cochain::{eval_with_vector, MMap, TupleCochain};
use crate::cohomology::{delta_cass, delta_pair, require_compatible, CAssCochain};
use crate::complex::Complex;
use crate::error::{ensure_dims, Error, Result};
use crate::operators::{check_morphism, OperatorPair};
use crate::report::{diff, CheckReport};
use crate::sample;
use crate::scalar::{unit_vec, zero_vec, Scalar};
use crate::tensor::{mat_vec, multi_indices, Tensor};

fn check_product(what: &str, dim: usize, t: &Tensor) -> Result<()> {
    if t.in_dims() != [dim, dim] || t.out_dim() != dim {
        return Err(Error::Input(format!("{what} tensor shape does not match dimension {dim}")));
    }
    Ok(())
}

/// `prec.slot([i, j])` is `e_i ≺ e_j`, likewise for `succ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendriformAlgebra {
    dim: usize,
    prec: Tensor,
    succ: Tensor,
}

impl DendriformAlgebra {
    pub fn new(dim: usize, prec: Tensor, succ: Tensor) -> Result<Self> {
        check_product("prec", dim, &prec)?;
        check_product("succ", dim, &succ)?;
        Ok(DendriformAlgebra { dim, prec, succ })
    }

    pub fn zero(dim: usize) -> Self {
        DendriformAlgebra { dim, prec: Tensor::zeros(vec![dim, dim], dim), succ: Tensor::zeros(vec![dim, dim], dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prec(&self) -> &Tensor {
        &self.prec
    }

    pub fn succ(&self) -> &Tensor {
        &self.succ
    }

    pub fn left(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.prec.eval(&[x, y])
    }

    pub fn right(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.succ.eval(&[x, y])
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        DendriformAlgebra { dim: self.dim, prec: self.prec.scaled(c), succ: self.succ.scaled(c) }
    }

    /// `π` with `[1] ↦ ≺` and `[2] ↦ ≻`.
    pub fn pi(&self) -> DendCochain {
        DendCochain { dim: self.dim, labels: vec![self.prec.clone(), self.succ.clone()] }
    }

    /// `x ⋆ y = x ≺ y + x ≻ y`.
    pub fn total(&self) -> Algebra {
        Algebra::new(self.dim, self.prec.plus(&self.succ)).expect("shape")
    }

    fn combine(&self, other: &DendriformAlgebra) -> DendriformAlgebra {
        DendriformAlgebra { dim: self.dim, prec: self.prec.plus(&other.prec), succ: self.succ.plus(&other.succ) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleDendriform {
    pub first: DendriformAlgebra,
    pub second: DendriformAlgebra,
}

impl CompatibleDendriform {
    pub fn new(first: DendriformAlgebra, second: DendriformAlgebra) -> Result<Self> {
        ensure_dims("compatible dendriform dimension", second.dim, first.dim)?;
        Ok(CompatibleDendriform { first, second })
    }

    pub fn zero(dim: usize) -> Self {
        CompatibleDendriform { first: DendriformAlgebra::zero(dim), second: DendriformAlgebra::zero(dim) }
    }

    pub fn dim(&self) -> usize {
        self.first.dim
    }

    pub fn sum(&self) -> DendriformAlgebra {
        self.first.combine(&self.second)
    }

    /// `{"dim", "prec1", "succ1", "prec2", "succ2"}` with nested
    /// output-first coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let t = |x: &Tensor| coeffs_json(x);
        serde_json::json!({
            "dim": self.dim(),
            "prec1": t(&self.first.prec),
            "succ1": t(&self.first.succ),
            "prec2": t(&self.second.prec),
            "succ2": t(&self.second.succ),
        })
    }
}

impl Serialize for CompatibleDendriform {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn coeffs_json(t: &Tensor) -> serde_json::Value {
    MMap::from_tensor(t.clone()).expect("uniform").to_json()["coeffs"].clone()
}

/// The three axioms with the inner products taken from `a` and the outer ones
/// from `b`; `a = b` gives the dendriform axioms, `(1,2) + (2,1)` the mixed
/// ones.
fn dend_forms(a: &DendriformAlgebra, b: &DendriformAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> [Vec<Scalar>; 3] {
    let first = diff(&b.left(&a.left(x, y), z), &b.left(x, &add(&a.left(y, z), &a.right(y, z))));
    let second = diff(&b.left(&a.right(x, y), z), &b.right(x, &a.left(y, z)));
    let third = diff(&b.right(&add(&a.left(x, y), &a.right(x, y)), z), &b.right(x, &a.right(y, z)));
    [first, second, third]
}

const DEND_AXIOMS: [&str; 3] = [
    "(x<y)<z = x<(y<z + y>z)",
    "(x>y)<z = x>(y<z)",
    "(x<y + x>y)>z = x>(y>z)",
];

const MIXED_AXIOMS: [&str; 3] = [
    "(x<1 y)<2 z + (x<2 y)<1 z = x<2 (y*1 z) + x<1 (y*2 z)",
    "(x>1 y)<2 z + (x>2 y)<1 z = x>2 (y<1 z) + x>1 (y<2 z)",
    "(x*1 y)>2 z + (x*2 y)>1 z = x>2 (y>1 z) + x>1 (y>2 z)",
];

pub fn check_dendriform(d: &DendriformAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("dendriform");
    let n = d.dim;
    for ix in multi_indices(&[n, n, n]) {
        let (x, y, z) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]), unit_vec(n, ix[2]));
        for (name, defect) in DEND_AXIOMS.iter().zip(dend_forms(d, d, &x, &y, &z)) {
            rep.expect_zero(name, &ix, defect);
        }
    }
    rep
}

/// Both structures, the mixed axioms, and the summed structure.
pub fn check_compatible_dendriform(cd: &CompatibleDendriform) -> CheckReport {
    let mut rep = CheckReport::new("compatible dendriform");
    let mut first = check_dendriform(&cd.first);
    first.check = "first structure".into();
    rep.absorb(first);
    let mut second = check_dendriform(&cd.second);
    second.check = "second structure".into();
    rep.absorb(second);
    let n = cd.dim();
    for ix in multi_indices(&[n, n, n]) {
        let (x, y, z) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]), unit_vec(n, ix[2]));
        let ab = dend_forms(&cd.first, &cd.second, &x, &y, &z);
        let ba = dend_forms(&cd.second, &cd.first, &x, &y, &z);
        for ((name, u), v) in MIXED_AXIOMS.iter().zip(ab).zip(ba) {
            rep.expect_zero(name, &ix, add(&u, &v));
        }
    }
    let sum = check_dendriform(&cd.sum());
    if rep.passed && !sum.passed {
        rep.fail("summed structure fails although all componentwise identities hold", &[]);
    }
    rep
}

pub(crate) fn require_compatible_dendriform(cd: &CompatibleDendriform) -> Result<()> {
    let rep = check_compatible_dendriform(cd);
    if !rep.passed {
        let what = rep.first_failure().map(|d| d.identity.clone()).unwrap_or_default();
        return Err(Error::Domain(format!("not a compatible dendriform algebra ({what})")));
    }
    Ok(())
}

/// `ψ` is a morphism of compatible dendriform algebras `from → to`; `psi` is
/// `dim to x dim from`.
pub fn check_dendriform_morphism(
    psi: &[Vec<Scalar>],
    from: &CompatibleDendriform,
    to: &CompatibleDendriform,
) -> Result<CheckReport> {
    ensure_dims("psi rows", psi.len(), to.dim())?;
    for row in psi {
        ensure_dims("psi columns", row.len(), from.dim())?;
    }
    let mut rep = CheckReport::new("dendriform morphism");
    let n = from.dim();
    for ix in multi_indices(&[n, n]) {
        let (x, y) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]));
        let (px, py) = (mat_vec(psi, &x), mat_vec(psi, &y));
        for (k, (f, t)) in [(&from.first, &to.first), (&from.second, &to.second)].into_iter().enumerate() {
            let names = if k == 0 { ["psi(x<1 y) = psi(x)<1 psi(y)", "psi(x>1 y) = psi(x)>1 psi(y)"] } else {
                ["psi(x<2 y) = psi(x)<2 psi(y)", "psi(x>2 y) = psi(x)>2 psi(y)"]
            };
            rep.expect_zero(names[0], &ix, diff(&mat_vec(psi, &f.left(&x, &y)), &t.left(&px, &py)));
            rep.expect_zero(names[1], &ix, diff(&mat_vec(psi, &f.right(&x, &y)), &t.right(&px, &py)));
        }
    }
    Ok(rep)
}

fn check_box(m: usize, i: usize, n: usize, r: usize) -> Result<()> {
    if n == 0 || i == 0 || i > m {
        return Err(Error::Input(format!("box index {i} out of range 1..={m} (inner arity {n})")));
    }
    if r == 0 || r > m + n - 1 {
        return Err(Error::Input(format!("label [{r}] out of range 1..={}", m + n - 1)));
    }
    Ok(())
}

/// The box `[r]` falls into when the `i`-th of `m` boxes holds `n` symbols.
pub fn r_map(m: usize, i: usize, n: usize, r: usize) -> Result<usize> {
    check_box(m, i, n, r)?;
    Ok(if r < i {
        r
    } else if r < i + n {
        i
    } else {
        r + 1 - n
    })
}

/// Coefficients of the formal sum over `[1]..[n]`: `[r - i + 1]` inside the
/// `i`-th box, `[1] + ... + [n]` outside it.
pub fn s_map(m: usize, i: usize, n: usize, r: usize) -> Result<Vec<Scalar>> {
    check_box(m, i, n, r)?;
    Ok(if r >= i && r < i + n { unit_vec(n, r - i) } else { vec![Scalar::one(); n] })
}

/// A map `k[C_n] ⊗ D^{⊗n} → D`, one tensor per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendCochain {
    dim: usize,
    labels: Vec<Tensor>,
}

impl DendCochain {
    pub fn new(dim: usize, labels: Vec<Tensor>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Input("a labeled cochain needs arity at least 1".into()));
        }
        for (r, t) in labels.iter().enumerate() {
            if t.in_dims() != vec![dim; n].as_slice() || t.out_dim() != dim {
                return Err(Error::Input(format!("label [{}] does not have shape D^{n} -> D", r + 1)));
            }
        }
        Ok(DendCochain { dim, labels })
    }

    pub fn zero(arity: usize, dim: usize) -> Self {
        DendCochain { dim, labels: vec![Tensor::zeros(vec![dim; arity], dim); arity] }
    }

    /// The operad unit: the identity map on the single label.
    pub fn identity(dim: usize) -> Self {
        let id = Tensor::from_fn(vec![dim], dim, |ix| unit_vec(dim, ix[0]));
        DendCochain { dim, labels: vec![id] }
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The tensor at label `[r]`, `1 <= r <= arity`.
    pub fn label(&self, r: usize) -> &Tensor {
        &self.labels[r - 1]
    }

    pub fn labels(&self) -> &[Tensor] {
        &self.labels
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(Tensor::is_zero)
    }

    pub fn plus(&self, o: &DendCochain) -> DendCochain {
        DendCochain { dim: self.dim, labels: self.labels.iter().zip(&o.labels).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> DendCochain {
        DendCochain { dim: self.dim, labels: self.labels.iter().map(|t| t.scaled(c)).collect() }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &DendCochain) {
        for (a, b) in self.labels.iter_mut().zip(&o.labels) {
            a.add_scaled(c, b);
        }
    }

    /// `Σ_r f([r]; -)`.
    pub fn label_sum(&self) -> Tensor {
        let mut t = Tensor::zeros(vec![self.dim; self.arity()], self.dim);
        for l in &self.labels {
            t.add_assign(l);
        }
        t
    }

    pub fn coord_len(arity: usize, dim: usize) -> usize {
        arity * dim.pow(arity as u32 + 1)
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.labels.iter().flat_map(|t| t.data().iter().cloned()).collect()
    }

    pub fn from_coords(arity: usize, dim: usize, coords: &[Scalar]) -> Result<Self> {
        ensure_dims("labeled cochain coordinates", coords.len(), Self::coord_len(arity, dim))?;
        let step = dim.pow(arity as u32 + 1);
        let labels = (0..arity)
            .map(|r| Tensor::from_data(vec![dim; arity], dim, coords[r * step..(r + 1) * step].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        DendCochain::new(dim, labels)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels: Vec<serde_json::Value> = self.labels.iter().map(coeffs_json).collect();
        serde_json::json!({ "arity": self.arity(), "labels": labels })
    }

    pub fn from_json(v: &serde_json::Value, dim: usize) -> Result<Self> {
        let arity = v
            .get("arity")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Input("labeled cochain needs an integer \"arity\"".into()))? as usize;
        let labels = v
            .get("labels")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Input("labeled cochain needs a \"labels\" array".into()))?;
        ensure_dims("number of labels", labels.len(), arity)?;
        let labels = labels
            .iter()
            .map(|c| {
                let m = MMap::from_json(&serde_json::json!({ "arity": arity, "coeffs": c }), dim, dim)?;
                Ok(m.tensor().clone())
            })
            .collect::<Result<Vec<_>>>()?;
        DendCochain::new(dim, labels)
    }
}

impl Serialize for DendCochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Plain operadic insertion of `g` into slot `i` (0-based) of `f`.
fn insert(f: &Tensor, i: usize, g: &Tensor) -> Tensor {
    let (m, n, d) = (f.arity(), g.arity(), f.out_dim());
    Tensor::from_fn(vec![d; m + n - 1], d, |w| {
        let inner = g.slot(&w[i..i + n]);
        eval_with_vector(f, &w[..i], inner, &w[i + n..])
    })
}

/// `(f ∘_i g)([r]; x) = f(R[r]; x_1, .., g(S[r]; x_i, .., x_{i+n-1}), ..)`,
/// `1 <= i <= arity(f)`.
pub fn partial_composition(f: &DendCochain, i: usize, g: &DendCochain) -> Result<DendCochain> {
    ensure_dims("labeled cochain dimension", g.dim, f.dim)?;
    let (m, n) = (f.arity(), g.arity());
    if i == 0 || i > m {
        return Err(Error::Input(format!("composition slot {i} out of range 1..={m}")));
    }
    let outside = g.label_sum();
    let labels = (1..m + n)
        .map(|r| {
            let fr = f.label(r_map(m, i, n, r)?);
            let gs = if r >= i && r < i + n { g.label(r - i + 1) } else { &outside };
            Ok(insert(fr, i - 1, gs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DendCochain { dim: f.dim, labels })
}

/// `Σ_i (-1)^{(i-1)(n-1)} f ∘_i g`.
fn circ(f: &DendCochain, g: &DendCochain) -> Result<DendCochain> {
    let (m, n) = (f.arity(), g.arity());
    let mut out = DendCochain::zero(m + n - 1, f.dim);
    for i in 1..=m {
        let s = Scalar::sign(((i - 1) * (n - 1)) as i64);
        out.add_scaled(&s, &partial_composition(f, i, g)?);
    }
    Ok(out)
}

/// `{{f, g}} = f ∘ g - (-1)^{(m-1)(n-1)} g ∘ f`, of degree `arity - 1`.
pub fn brace_bracket(f: &DendCochain, g: &DendCochain) -> Result<DendCochain> {
    let (m, n) = (f.arity(), g.arity());
    let mut out = circ(f, g)?;
    out.add_scaled(&-Scalar::sign(((m - 1) * (n - 1)) as i64), &circ(g, f)?);
    Ok(out)
}

/// An element of `C^n_cDend`: `n` labeled cochains of arity `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompDendCochain {
    degree: usize,
    parts: Vec<DendCochain>,
}

impl CompDendCochain {
    pub fn new(degree: usize, parts: Vec<DendCochain>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Input("compatible dendriform cochains start in degree 1".into()));
        }
        ensure_dims("cochain part count", parts.len(), degree)?;
        let dim = parts[0].dim;
        if parts.iter().any(|p| p.arity() != degree || p.dim != dim) {
            return Err(Error::Input(format!("all parts of a degree-{degree} cochain need arity {degree}")));
        }
        Ok(CompDendCochain { degree, parts })
    }

    pub fn zero(degree: usize, dim: usize) -> Self {
        CompDendCochain { degree, parts: vec![DendCochain::zero(degree, dim); degree] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[DendCochain] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(DendCochain::is_zero)
    }

    pub fn coord_len(degree: usize, dim: usize) -> usize {
        degree * DendCochain::coord_len(degree, dim)
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.parts.iter().flat_map(DendCochain::coords).collect()
    }

    pub fn from_coords(degree: usize, dim: usize, coords: &[Scalar]) -> Result<Self> {
        ensure_dims("cochain coordinates", coords.len(), Self::coord_len(degree, dim))?;
        let step = DendCochain::coord_len(degree, dim);
        let parts = (0..degree)
            .map(|k| DendCochain::from_coords(degree, dim, &coords[k * step..(k + 1) * step]))
            .collect::<Result<Vec<_>>>()?;
        CompDendCochain::new(degree, parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let parts: Vec<serde_json::Value> = self.parts.iter().map(DendCochain::to_json).collect();
        serde_json::json!({ "degree": self.degree, "parts": parts })
    }
}

impl Serialize for CompDendCochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn cdend_differential(cd: &CompatibleDendriform, x: &CompDendCochain) -> Result<CompDendCochain> {
    let (n, d) = (x.degree, cd.dim());
    let (p1, p2) = (cd.first.pi(), cd.second.pi());
    let mut parts = vec![DendCochain::zero(n + 1, d); n + 1];
    for (i, f) in x.parts.iter().enumerate() {
        parts[i] = parts[i].plus(&brace_bracket(&p1, f)?);
        parts[i + 1] = parts[i + 1].plus(&brace_bracket(&p2, f)?);
    }
    let s = Scalar::sign(n as i64 - 1);
    CompDendCochain::new(n + 1, parts.iter().map(|p| p.scaled(&s)).collect())
}

/// `(-1)^{n-1} ({{π1, f_1}}, .., {{π1, f_i}} + {{π2, f_{i-1}}}, .., {{π2, f_n}})`.
pub fn delta_cdend(cd: &CompatibleDendriform, x: &CompDendCochain) -> Result<CompDendCochain> {
    ensure_dims("cochain dimension", x.parts[0].dim, cd.dim())?;
    require_compatible_dendriform(cd)?;
    cdend_differential(cd, x)
}

/// The cochain complex of a compatible dendriform algebra; `C^0 = 0`.
pub struct CDendComplex {
    cd: CompatibleDendriform,
}

impl CDendComplex {
    pub fn new(cd: CompatibleDendriform) -> Result<Self> {
        require_compatible_dendriform(&cd)?;
        Ok(CDendComplex { cd })
    }
}

impl Complex for CDendComplex {
    fn name(&self) -> &str {
        "compatible dendriform"
    }

    fn dim(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            CompDendCochain::coord_len(n, self.cd.dim())
        }
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if n == 0 {
            ensure_dims("degree-0 coordinates", x.len(), 0)?;
            return Ok(zero_vec(self.dim(1)));
        }
        let x = CompDendCochain::from_coords(n, self.cd.dim(), x)?;
        Ok(cdend_differential(&self.cd, &x)?.coords())
    }
}

/// `(D, ⋆_1, ⋆_2)` with `⋆_i = ≺_i + ≻_i`.
pub fn total_algebra(cd: &CompatibleDendriform) -> CompatibleAlgebra {
    CompatibleAlgebra::new(cd.first.total(), cd.second.total()).expect("same dimension")
}

/// `u ≺ v = u · T(v)` and `u ≻ v = T(u) · v` on `M`, for each operator.
pub fn induced_dendriform(p: &OperatorPair) -> Result<CompatibleDendriform> {
    require_compatible(p)?;
    let ctx = &p.ctx;
    let dm = ctx.dm();
    let one = |t: &MMap| {
        let prec = Tensor::from_fn(vec![dm, dm], dm, |ix| ctx.bim.act_right(&unit_vec(dm, ix[0]), t.eval_basis(&[ix[1]])));
        let succ = Tensor::from_fn(vec![dm, dm], dm, |ix| ctx.bim.act_left(t.eval_basis(&[ix[0]]), &unit_vec(dm, ix[1])));
        DendriformAlgebra::new(dm, prec, succ)
    };
    CompatibleDendriform::new(one(&p.t1)?, one(&p.t2)?)
}

/// Morphism data `(φ, ψ)` between compatible pairs gives the dendriform
/// morphism `ψ` between the induced structures.
pub fn check_induced_naturality(
    phi: &[Vec<Scalar>],
    psi: &[Vec<Scalar>],
    from: &OperatorPair,
    to: &OperatorPair,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("induced dendriform naturality");
    let pair = check_morphism(phi, psi, from, to)?;
    if !pair.passed {
        return Err(Error::Domain("morphism data is not a morphism of compatible pairs".into()));
    }
    rep.absorb(check_dendriform_morphism(psi, &induced_dendriform(from)?, &induced_dendriform(to)?)?);
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLieAlgebra {
    dim: usize,
    diamond: Tensor,
}

impl PreLieAlgebra {
    pub fn new(dim: usize, diamond: Tensor) -> Result<Self> {
        check_product("diamond", dim, &diamond)?;
        Ok(PreLieAlgebra { dim, diamond })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diamond(&self) -> &Tensor {
        &self.diamond
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.diamond.eval(&[x, y])
    }

    /// `[x, y] = x ⋄ y - y ⋄ x`.
    pub fn commutator(&self) -> Tensor {
        skew(&self.diamond)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePreLie {
    pub first: PreLieAlgebra,
    pub second: PreLieAlgebra,
}

impl CompatiblePreLie {
    pub fn new(first: PreLieAlgebra, second: PreLieAlgebra) -> Result<Self> {
        ensure_dims("compatible pre-Lie dimension", second.dim, first.dim)?;
        Ok(CompatiblePreLie { first, second })
    }

    pub fn dim(&self) -> usize {
        self.first.dim
    }
}

/// Two bracket tensors on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleLie {
    pub first: Tensor,
    pub second: Tensor,
}

impl CompatibleLie {
    pub fn dim(&self) -> usize {
        self.first.out_dim()
    }
}

fn skew(t: &Tensor) -> Tensor {
    let d = t.out_dim();
    Tensor::from_fn(vec![d, d], d, |ix| diff(t.slot(ix), t.slot(&[ix[1], ix[0]])))
}

/// `(x ⋄_a y) ⋄_b z - x ⋄_b (y ⋄_a z)` minus the same with `x, y` swapped.
fn prelie_form(a: &PreLieAlgebra, b: &PreLieAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let assoc = |x: &[Scalar], y: &[Scalar]| diff(&b.mul(&a.mul(x, y), z), &b.mul(x, &a.mul(y, z)));
    diff(&assoc(x, y), &assoc(y, x))
}

pub fn check_prelie(p: &PreLieAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("pre-Lie");
    let n = p.dim;
    for ix in multi_indices(&[n, n, n]) {
        let (x, y, z) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]), unit_vec(n, ix[2]));
        rep.expect_zero("(x.y).z - x.(y.z) = (y.x).z - y.(x.z)", &ix, prelie_form(p, p, &x, &y, &z));
    }
    rep
}

pub fn check_compatible_prelie(p: &CompatiblePreLie) -> CheckReport {
    let mut rep = CheckReport::new("compatible pre-Lie");
    let mut first = check_prelie(&p.first);
    first.check = "first product".into();
    rep.absorb(first);
    let mut second = check_prelie(&p.second);
    second.check = "second product".into();
    rep.absorb(second);
    let n = p.dim();
    for ix in multi_indices(&[n, n, n]) {
        let (x, y, z) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]), unit_vec(n, ix[2]));
        let d = add(&prelie_form(&p.first, &p.second, &x, &y, &z), &prelie_form(&p.second, &p.first, &x, &y, &z));
        rep.expect_zero("mixed pre-Lie identity", &ix, d);
    }
    rep
}

/// `[[x,y]_a, z]_b` summed cyclically.
fn jacobi_form(a: &Tensor, b: &Tensor, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let t = |u: &[Scalar], v: &[Scalar], w: &[Scalar]| b.eval(&[&a.eval(&[u, v]), w]);
    add(&add(&t(x, y, z), &t(y, z, x)), &t(z, x, y))
}

fn check_lie_bracket(name: &str, br: &Tensor) -> CheckReport {
    let mut rep = CheckReport::new(name);
    let n = br.out_dim();
    for ix in multi_indices(&[n, n]) {
        rep.expect_zero("[x,y] = -[y,x]", &ix, add(br.slot(&ix), br.slot(&[ix[1], ix[0]])));
    }
    for ix in multi_indices(&[n, n, n]) {
        let (x, y, z) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]), unit_vec(n, ix[2]));
        rep.expect_zero("Jacobi", &ix, jacobi_form(br, br, &x, &y, &z));
    }
    rep
}

pub fn check_compatible_lie(l: &CompatibleLie) -> CheckReport {
    let mut rep = CheckReport::new("compatible Lie");
    rep.absorb(check_lie_bracket("first bracket", &l.first));
    rep.absorb(check_lie_bracket("second bracket", &l.second));
    let n = l.dim();
    for ix in multi_indices(&[n, n, n]) {
        let (x, y, z) = (unit_vec(n, ix[0]), unit_vec(n, ix[1]), unit_vec(n, ix[2]));
        let d = add(&jacobi_form(&l.first, &l.second, &x, &y, &z), &jacobi_form(&l.second, &l.first, &x, &y, &z));
        rep.expect_zero("mixed Jacobi", &ix, d);
    }
    rep
}

/// `x ⋄_i y = x ≻_i y - y ≺_i x`.
pub fn sub_adjacent_prelie(cd: &CompatibleDendriform) -> CompatiblePreLie {
    let one = |d: &DendriformAlgebra| {
        let n = d.dim;
        let t = Tensor::from_fn(vec![n, n], n, |ix| diff(d.succ.slot(ix), d.prec.slot(&[ix[1], ix[0]])));
        PreLieAlgebra { dim: n, diamond: t }
    };
    CompatiblePreLie { first: one(&cd.first), second: one(&cd.second) }
}

/// The commutator brackets of both products.
pub fn prelie_to_lie(p: &CompatiblePreLie) -> CompatibleLie {
    CompatibleLie { first: p.first.commutator(), second: p.second.commutator() }
}

/// The commutator brackets of both associative products.
pub fn skew_symmetrization(c: &CompatibleAlgebra) -> CompatibleLie {
    CompatibleLie { first: skew(c.first.mu()), second: skew(c.second.mu()) }
}

/// `f_i ↦ Σ_r f_i([r]; -)`, into the cochains of the total algebra with
/// adjoint coefficients.
pub fn phi_map(x: &CompDendCochain) -> CAssCochain {
    CAssCochain::new(x.degree, x.parts.iter().map(DendCochain::label_sum).collect()).expect("shape")
}

/// `f_i ↦ f_i^Ind` with `f^Ind([1]; u) = (-1)^{n+1} u_1 · f(u_2, ..)`,
/// `f^Ind([n+1]; u) = f(u_1, .., u_n) · u_{n+1}`, zero on other labels.
///
/// This map satisfies `Ψ δ = (-1)^n δ Ψ` in degree `n`; [`psi_map`] is the
/// sign-normalized version that commutes with the differentials.
pub fn psi_displayed(p: &OperatorPair, x: &TupleCochain) -> Result<CompDendCochain> {
    let n = x.degree();
    if n == 0 {
        return Err(Error::Input("the induced labeled cochains start from degree 1".into()));
    }
    let ctx = &p.ctx;
    ensure_dims("cochain algebra dimension", x.parts()[0].da(), ctx.da())?;
    ensure_dims("cochain module dimension", x.parts()[0].dm(), ctx.dm())?;
    let dm = ctx.dm();
    let sign = Scalar::sign(n as i64 + 1);
    let parts = x
        .parts()
        .iter()
        .map(|f| {
            let mut labels = vec![Tensor::zeros(vec![dm; n + 1], dm); n + 1];
            labels[0] = Tensor::from_fn(vec![dm; n + 1], dm, |w| {
                let v = ctx.bim.act_right(&unit_vec(dm, w[0]), f.eval_basis(&w[1..]));
                v.iter().map(|c| c * &sign).collect()
            });
            labels[n] = Tensor::from_fn(vec![dm; n + 1], dm, |w| {
                ctx.bim.act_left(f.eval_basis(&w[..n]), &unit_vec(dm, w[n]))
            });
            DendCochain::new(dm, labels)
        })
        .collect::<Result<Vec<_>>>()?;
    CompDendCochain::new(n + 1, parts)
}

/// `Φ ∘ δ_cDend = δ_cAss ∘ Φ` on `samples` random cochains of each degree
/// `1..=max_degree`.
pub fn verify_phi_chain_map(
    cd: &CompatibleDendriform,
    max_degree: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CheckReport> {
    require_compatible_dendriform(cd)?;
    let tot = total_algebra(cd);
    let bim = CompatibleBimodule::adjoint(&tot);
    let d = cd.dim();
    let mut rep = CheckReport::new("label-sum chain map");
    for n in 1..=max_degree {
        for s in 0..samples {
            let x = sample::comp_dend(rng, n, d);
            let lhs = phi_map(&cdend_differential(cd, &x)?);
            let rhs = delta_cass(&tot, &bim, &phi_map(&x))?;
            rep.expect_zero("Phi d(x) = d Phi(x)", &[n, s], diff(&lhs.coords(), &rhs.coords()));
        }
    }
    Ok(rep)
}

/// `(-1)^{n(n-1)/2} ·` [`psi_displayed`] in degree `n`. It induces the same
/// map on cohomology up to a sign in each degree.
pub fn psi_map(p: &OperatorPair, x: &TupleCochain) -> Result<CompDendCochain> {
    let n = x.degree() as i64;
    let y = psi_displayed(p, x)?;
    let s = Scalar::sign(n * (n - 1) / 2);
    CompDendCochain::new(y.degree, y.parts.iter().map(|f| f.scaled(&s)).collect())
}

/// `Ψ ∘ δ_(T1,T2) = δ_cDend ∘ Ψ` on `samples` random cochains of each degree
/// `1..=max_degree`.
pub fn verify_psi_chain_map(
    p: &OperatorPair,
    max_degree: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CheckReport> {
    let cd = induced_dendriform(p)?;
    let (da, dm) = (p.ctx.da(), p.ctx.dm());
    let mut rep = CheckReport::new("induced chain map");
    for n in 1..=max_degree {
        for s in 0..samples {
            let x = sample::tuple(rng, n, da, dm);
            let lhs = psi_map(p, &delta_pair(p, &x)?)?;
            let rhs = cdend_differential(&cd, &psi_map(p, &x)?)?;
            rep.expect_zero("Psi d(x) = d Psi(x)", &[n, s], diff(&lhs.coords(), &rhs.coords()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_maps() {
        let r: Vec<usize> = (1..=3).map(|r| r_map(2, 1, 2, r).unwrap()).collect();
        assert_eq!(r, vec![1, 1, 2]);
        let r: Vec<usize> = (1..=3).map(|r| r_map(2, 2, 2, r).unwrap()).collect();
        assert_eq!(r, vec![1, 2, 2]);
        let one = Scalar::one;
        let zero = Scalar::zero;
        assert_eq!(s_map(2, 1, 2, 3).unwrap(), vec![one(), one()]);
        assert_eq!(s_map(2, 2, 2, 2).unwrap(), vec![one(), zero()]);
        assert_eq!(s_map(2, 2, 2, 1).unwrap(), vec![one(), one()]);
        assert!(r_map(2, 3, 1, 1).is_err());
        assert!(s_map(2, 1, 2, 4).is_err());
    }

    #[test]
    fn zero_structure_passes() {
        assert!(check_compatible_dendriform(&CompatibleDendriform::zero(2)).passed);
    }
}
