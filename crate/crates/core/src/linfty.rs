//! The `L∞[1]`-algebra on `V'[1] ⊕ 𝔞` governing O-operators, its lift to
//! compatible pairs, Maurer-Cartan elements and the twisted differentials.
//!
//! Grading: `V'_p` holds the bidegree `p|0` maps `(A ⊕ M)^{p+1} -> A ⊕ M`
//! and sits in degree `p - 1` after the shift; `𝔞_l = Hom(M^{l+1}, A)` sits
//! in degree `l`. An element of degree `i` is a `V'_{i+1}` map plus one
//! `𝔞_i` map (base) or `i + 2` of them (lifted). `𝔞_{-1} = 0`, so degree
//! `-1` elements carry no `𝔞` parts.

use rand::Rng;

use crate::cochain::{Context, MMap};
use crate::cohomology::{require_compatible, require_ooperator};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::mixed::{gerstenhaber, MixedMap, Space};
use crate::operators::OperatorPair;
use crate::report::CheckReport;
use crate::sample;
use crate::scalar::Scalar;
use crate::tensor::{multi_indices, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInftyElement {
    degree: i64,
    vprime: MixedMap,
    parts: Vec<MMap>,
}

pub fn base_part_count(degree: i64) -> usize {
    if degree < 0 {
        0
    } else {
        1
    }
}

pub fn lifted_part_count(degree: i64) -> usize {
    if degree < 0 {
        0
    } else {
        degree as usize + 2
    }
}

fn part_count(degree: i64, lifted: bool) -> usize {
    if lifted {
        lifted_part_count(degree)
    } else {
        base_part_count(degree)
    }
}

impl LInftyElement {
    pub fn new(degree: i64, vprime: MixedMap, parts: Vec<MMap>) -> Result<Self> {
        if degree < -1 {
            return Err(Error::Input(format!("no elements in degree {degree}")));
        }
        if vprime.arity() as i64 != degree + 2 {
            return Err(Error::Input(format!(
                "V' part of a degree {degree} element must have arity {}",
                degree + 2
            )));
        }
        if vprime.components().any(|(s, t)| !t.is_zero() && s.bidegree() != (degree + 1, 0)) {
            return Err(Error::Input(format!("V' part must have bidegree {}|0", degree + 1)));
        }
        if parts.len() != base_part_count(degree) && parts.len() != lifted_part_count(degree) {
            return Err(Error::Input(format!("wrong number of parts for degree {degree}: {}", parts.len())));
        }
        for p in &parts {
            if p.arity() as i64 != degree + 1 || p.da() != vprime.da() || p.dm() != vprime.dm() {
                return Err(Error::Input("part has the wrong arity or dimensions".into()));
            }
        }
        Ok(LInftyElement { degree, vprime, parts })
    }

    pub fn zero(degree: i64, da: usize, dm: usize, lifted: bool) -> Self {
        assert!(degree >= -1);
        let arity = (degree + 1) as usize;
        LInftyElement {
            degree,
            vprime: MixedMap::zero(arity + 1, da, dm),
            parts: vec![MMap::zero(arity, da, dm); part_count(degree, lifted)],
        }
    }

    /// `(π, T)` for a context and one operator.
    pub fn from_operator(ctx: &Context, t: &MMap) -> Result<Self> {
        LInftyElement::new(0, MixedMap::structure(ctx), vec![t.clone()])
    }

    /// `(π, (T1, T2))`.
    pub fn from_pair(p: &OperatorPair) -> Result<Self> {
        LInftyElement::new(0, MixedMap::structure(&p.ctx), vec![p.t1.clone(), p.t2.clone()])
    }

    /// An element with only `𝔞` parts.
    pub fn from_parts(degree: i64, parts: Vec<MMap>, da: usize, dm: usize) -> Result<Self> {
        LInftyElement::new(degree, MixedMap::zero((degree + 2).max(0) as usize, da, dm), parts)
    }

    /// An element with zero `𝔞` parts.
    pub fn from_vprime(degree: i64, vprime: MixedMap, lifted: bool) -> Result<Self> {
        let parts = vec![MMap::zero((degree + 1).max(0) as usize, vprime.da(), vprime.dm()); part_count(degree, lifted)];
        LInftyElement::new(degree, vprime, parts)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn vprime(&self) -> &MixedMap {
        &self.vprime
    }

    pub fn parts(&self) -> &[MMap] {
        &self.parts
    }

    pub fn da(&self) -> usize {
        self.vprime.da()
    }

    pub fn dm(&self) -> usize {
        self.vprime.dm()
    }

    pub fn is_lifted(&self) -> bool {
        self.degree < 0 || self.parts.len() == lifted_part_count(self.degree)
    }

    pub fn is_base(&self) -> bool {
        self.parts.len() == base_part_count(self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.vprime.is_zero() && self.parts.iter().all(MMap::is_zero)
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &LInftyElement) {
        assert_eq!((self.degree, self.parts.len()), (o.degree, o.parts.len()), "adding unlike elements");
        self.vprime.add_scaled(c, &o.vprime);
        for (p, q) in self.parts.iter_mut().zip(&o.parts) {
            p.add_scaled(c, q);
        }
    }

    pub fn plus(&self, o: &LInftyElement) -> LInftyElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), o);
        out
    }

    pub fn scaled(&self, c: &Scalar) -> LInftyElement {
        LInftyElement {
            degree: self.degree,
            vprime: self.vprime.scaled(c),
            parts: self.parts.iter().map(|p| p.scaled(c)).collect(),
        }
    }

    /// `Θ(x, (a_1, ..., a_m)) = (x, a_1 + ... + a_m)`.
    pub fn theta(&self) -> LInftyElement {
        let arity = (self.degree + 1).max(0) as usize;
        let parts = if self.degree < 0 {
            Vec::new()
        } else {
            let mut s = MMap::zero(arity, self.da(), self.dm());
            for p in &self.parts {
                s.add_scaled(&Scalar::one(), p);
            }
            vec![s]
        };
        LInftyElement { degree: self.degree, vprime: self.vprime.clone(), parts }
    }

    pub fn coord_len(degree: i64, da: usize, dm: usize, lifted: bool) -> usize {
        let arity = (degree + 1) as usize;
        let v: usize = MixedMap::signatures_of_bidegree(arity + 1, degree + 1, 0)
            .iter()
            .map(|s| {
                let (ins, out) = MixedMap::zero(arity + 1, da, dm).shape_of(s);
                ins.iter().product::<usize>() * out
            })
            .sum();
        v + part_count(degree, lifted) * MMap::coord_len(arity, da, dm)
    }

    /// The `V'` components in signature order, then the parts.
    pub fn coords(&self) -> Vec<Scalar> {
        let arity = (self.degree + 1) as usize;
        let mut out = Vec::new();
        for s in MixedMap::signatures_of_bidegree(arity + 1, self.degree + 1, 0) {
            match self.vprime.component(&s) {
                Some(t) => out.extend_from_slice(t.data()),
                None => {
                    let (ins, od) = self.vprime.shape_of(&s);
                    out.extend(std::iter::repeat(Scalar::zero()).take(ins.iter().product::<usize>() * od));
                }
            }
        }
        for p in &self.parts {
            out.extend_from_slice(p.coords());
        }
        out
    }

    pub fn from_coords(degree: i64, da: usize, dm: usize, lifted: bool, coords: &[Scalar]) -> Result<Self> {
        if degree < -1 {
            return Err(Error::Input(format!("no elements in degree {degree}")));
        }
        if coords.len() != Self::coord_len(degree, da, dm, lifted) {
            return Err(Error::Input(format!(
                "expected {} coordinates, got {}",
                Self::coord_len(degree, da, dm, lifted),
                coords.len()
            )));
        }
        let arity = (degree + 1) as usize;
        let mut vprime = MixedMap::zero(arity + 1, da, dm);
        let mut at = 0;
        for s in MixedMap::signatures_of_bidegree(arity + 1, degree + 1, 0) {
            let (ins, od) = vprime.shape_of(&s);
            let n = ins.iter().product::<usize>() * od;
            let t = Tensor::from_data(ins, od, coords[at..at + n].to_vec())?;
            at += n;
            if !t.is_zero() {
                vprime.add_component(s, &t)?;
            }
        }
        let len = MMap::coord_len(arity, da, dm);
        let mut parts = Vec::new();
        for _ in 0..part_count(degree, lifted) {
            parts.push(MMap::from_coords(arity, da, dm, coords[at..at + len].to_vec())?);
            at += len;
        }
        Ok(LInftyElement { degree, vprime, parts })
    }
}

impl LInftyElement {
    /// `{"degree", "vprime": [{"inputs", "output", "data"}], "parts"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let space = |s: &Space| if *s == Space::A { "A" } else { "M" };
        let vprime: Vec<serde_json::Value> = self
            .vprime
            .components()
            .filter(|(_, t)| !t.is_zero())
            .map(|(sig, t)| {
                serde_json::json!({
                    "inputs": sig.inputs.iter().map(space).collect::<String>(),
                    "output": space(&sig.output),
                    "data": t.data().iter().map(Scalar::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "degree": self.degree,
            "vprime": vprime,
            "parts": self.parts.iter().map(MMap::to_json).collect::<Vec<_>>(),
        })
    }
}

impl serde::Serialize for LInftyElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `P[...[[x, a_1]_G, a_2]_G, ..., a_m]_G`.
fn nested_projection(x: &MixedMap, args: &[&MMap]) -> Result<MMap> {
    let dm = x.dm();
    let mut g = x.clone();
    for a in args {
        g = gerstenhaber(&g, &MixedMap::from_mmap(a, dm))?;
        if g.is_zero() {
            let arity = x.arity() + args.iter().map(|a| a.arity()).sum::<usize>() - args.len();
            return Ok(MMap::zero(arity, x.da(), dm));
        }
    }
    Ok(g.project_m_to_a())
}

fn check_args(args: &[&LInftyElement], lifted: bool) -> Result<()> {
    let first = args.first().ok_or_else(|| Error::Input("bracket needs at least one argument".into()))?;
    for a in args {
        if (a.da(), a.dm()) != (first.da(), first.dm()) {
            return Err(Error::Input("bracket arguments live over different spaces".into()));
        }
        let ok = if lifted { a.is_lifted() } else { a.is_base() };
        if !ok {
            return Err(Error::Input(format!(
                "degree {} argument has {} parts, not a {} element",
                a.degree,
                a.parts.len(),
                if lifted { "lifted" } else { "base" }
            )));
        }
    }
    Ok(())
}

fn bracket(args: &[&LInftyElement], lifted: bool) -> Result<LInftyElement> {
    check_args(args, lifted)?;
    let k = args.len();
    let degree: i64 = args.iter().map(|a| a.degree).sum::<i64>() + 1;
    if degree < -1 {
        return Err(Error::Input(format!("l_{k} of these arguments would land in degree {degree}")));
    }
    let (da, dm) = (args[0].da(), args[0].dm());
    let mut out = LInftyElement::zero(degree, da, dm, lifted);
    if k == 2 && !args[0].vprime.is_zero() && !args[1].vprime.is_zero() {
        // l_2(x[1], y[1]) = (-1)^{|x|} [x, y]_G [1]
        let c = Scalar::sign(args[0].degree + 1);
        out.vprime.add_scaled(&c, &gerstenhaber(&args[0].vprime, &args[1].vprime)?);
    }
    // One V' argument, all others from 𝔞; only x ∈ V'_{k-2} lands in bidegree -1.
    for p in 0..k {
        let x = args[p];
        if x.degree != k as i64 - 3 || x.vprime.is_zero() {
            continue;
        }
        let before: i64 = args[..p].iter().map(|a| a.degree).sum();
        let sign = Scalar::sign(x.degree * before);
        let others: Vec<&LInftyElement> = args.iter().enumerate().filter(|(q, _)| *q != p).map(|(_, a)| *a).collect();
        let lens: Vec<usize> = others.iter().map(|a| a.parts.len()).collect();
        for js in multi_indices(&lens) {
            let picked: Vec<&MMap> = others.iter().zip(&js).map(|(a, &j)| &a.parts[j]).collect();
            if picked.iter().any(|m| m.is_zero()) {
                continue;
            }
            let target = js.iter().sum::<usize>();
            let term = nested_projection(&x.vprime, &picked)?;
            out.parts[target].add_scaled(&sign, &term);
        }
    }
    Ok(out)
}

/// `l_k` of the base `L∞[1]`-algebra.
pub fn l_base(args: &[&LInftyElement]) -> Result<LInftyElement> {
    bracket(args, false)
}

/// `l̃_k` of the lifted algebra: the `𝔞` part with index `s` collects the
/// terms whose input part indices sum to `s`.
pub fn l_lifted(args: &[&LInftyElement]) -> Result<LInftyElement> {
    bracket(args, true)
}

fn flavor(alpha: &LInftyElement) -> Result<bool> {
    if alpha.degree != 0 {
        return Err(Error::Input("Maurer-Cartan candidates live in degree 0".into()));
    }
    Ok(alpha.is_lifted())
}

/// Koszul sign of listing graded elements with the given degrees in the
/// order `perm`.
pub fn koszul_sign(degrees: &[i64], perm: &[usize]) -> Scalar {
    let mut e = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                e += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    Scalar::sign(e)
}

/// `Σ_{i+j=n+1} Σ_{σ ∈ Sh(i,n-i)} ε(σ) l_j(l_i(x_σ(1), ..), .., x_σ(n))`,
/// which vanishes in an `L∞[1]`-algebra. Inner brackets that would land
/// below degree `-1` are zero and skipped.
pub fn jacobi_defect(xs: &[&LInftyElement], lifted: bool) -> Result<LInftyElement> {
    check_args(xs, lifted)?;
    let n = xs.len();
    let degrees: Vec<i64> = xs.iter().map(|x| x.degree).collect();
    let total = degrees.iter().sum::<i64>() + 2;
    if total < -1 {
        return Err(Error::Input("Jacobi expression lands below degree -1".into()));
    }
    let mut out = LInftyElement::zero(total, xs[0].da(), xs[0].dm(), lifted);
    for i in 1..=n {
        for mask in 0usize..(1 << n) {
            if mask.count_ones() as usize != i {
                continue;
            }
            let inner: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            let rest: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 0).collect();
            let inner_degree = inner.iter().map(|&b| degrees[b]).sum::<i64>() + 1;
            if inner_degree < -1 {
                continue;
            }
            let perm: Vec<usize> = inner.iter().chain(&rest).copied().collect();
            let args: Vec<&LInftyElement> = inner.iter().map(|&b| xs[b]).collect();
            let y = bracket(&args, lifted)?;
            let mut outer = vec![&y];
            outer.extend(rest.iter().map(|&b| xs[b]));
            out.add_scaled(&koszul_sign(&degrees, &perm), &bracket(&outer, lifted)?);
        }
    }
    Ok(out)
}

/// `Σ_k (1/k!) l_k(α, ..., α)`, after checking that the series stops at `k = 3`.
pub fn mc_defect(alpha: &LInftyElement) -> Result<LInftyElement> {
    let lifted = flavor(alpha)?;
    let mut out = LInftyElement::zero(1, alpha.da(), alpha.dm(), lifted);
    for k in 1..=4 {
        let args = vec![alpha; k];
        let term = bracket(&args, lifted)?;
        if k == 4 {
            if !term.is_zero() {
                return Err(Error::Logic("l_4(α, α, α, α) is nonzero".into()));
            }
        } else {
            out.add_scaled(&Scalar::inv_factorial(k), &term);
        }
    }
    Ok(out)
}

pub fn mc_check(alpha: &LInftyElement) -> Result<CheckReport> {
    let d = mc_defect(alpha)?;
    let mut rep = CheckReport::new("Maurer-Cartan equation");
    rep.expect_zero("V' component", &[], flat(&d.vprime));
    for (i, p) in d.parts.iter().enumerate() {
        rep.expect_zero("𝔞 component", &[i], p.coords().to_vec());
    }
    Ok(rep)
}

fn flat(m: &MixedMap) -> Vec<Scalar> {
    m.components().flat_map(|(_, t)| t.data().iter().cloned()).collect()
}

fn twisted_unchecked(alpha: &LInftyElement, x: &LInftyElement, lifted: bool) -> Result<LInftyElement> {
    let mut out = LInftyElement::zero(x.degree + 1, x.da(), x.dm(), lifted);
    // α has degree 0: terms survive only for i = 1, 2 and i = deg(x) + 2
    let bound = 2.max(x.degree + 2) as usize;
    for i in 0..=bound + 1 {
        let mut args = vec![alpha; i];
        args.push(x);
        let term = bracket(&args, lifted)?;
        if i == bound + 1 {
            if !term.is_zero() {
                return Err(Error::Logic(format!("twisted differential has a nonzero term l_{}", i + 1)));
            }
        } else {
            out.add_scaled(&Scalar::inv_factorial(i), &term);
        }
    }
    Ok(out)
}

/// `l_1^α(x) = Σ_i (1/i!) l_{i+1}(α, ..., α, x)` for a Maurer-Cartan `α`.
pub fn twisted_differential(alpha: &LInftyElement, x: &LInftyElement) -> Result<LInftyElement> {
    let lifted = flavor(alpha)?;
    if !mc_check(alpha)?.passed {
        return Err(Error::Domain("α is not a Maurer-Cartan element".into()));
    }
    twisted_unchecked(alpha, x, lifted)
}

/// `δ(x) = (-1)^n l_1^α(x)` on `C^n`, where `x` has degree `n - 2`.
fn signed_twisted(alpha: &LInftyElement, x: &LInftyElement, lifted: bool) -> Result<LInftyElement> {
    let n = x.degree + 2;
    Ok(twisted_unchecked(alpha, x, lifted)?.scaled(&Scalar::sign(n)))
}

/// The differential of the cohomology of a compatible pair with its
/// underlying algebra and bimodule.
pub fn delta_coa(p: &OperatorPair, x: &LInftyElement) -> Result<LInftyElement> {
    require_compatible(p)?;
    if !x.is_lifted() {
        return Err(Error::Input("cochain must be a lifted element".into()));
    }
    signed_twisted(&LInftyElement::from_pair(p)?, x, true)
}

/// The differential of the cohomology of an O-operator with its underlying
/// algebra and bimodule.
pub fn delta_oa(ctx: &Context, t: &MMap, x: &LInftyElement) -> Result<LInftyElement> {
    require_ooperator(ctx, t)?;
    if !x.is_base() {
        return Err(Error::Input("cochain must be a base element".into()));
    }
    signed_twisted(&LInftyElement::from_operator(ctx, t)?, x, false)
}

struct TwistedComplex {
    name: &'static str,
    alpha: LInftyElement,
    lifted: bool,
}

impl TwistedComplex {
    fn dim(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            LInftyElement::coord_len(n as i64 - 2, self.alpha.da(), self.alpha.dm(), self.lifted)
        }
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if n == 0 {
            return Ok(vec![Scalar::zero(); self.dim(1)]);
        }
        let x = LInftyElement::from_coords(n as i64 - 2, self.alpha.da(), self.alpha.dm(), self.lifted, x)?;
        Ok(signed_twisted(&self.alpha, &x, self.lifted)?.coords())
    }
}

/// `C^n = V'_{n-1} ⊕ n copies of Hom(M^{⊗(n-1)}, A)` for `n >= 1`, `C^0 = 0`.
pub struct COAComplex(TwistedComplex);

impl COAComplex {
    pub fn new(p: &OperatorPair) -> Result<Self> {
        require_compatible(p)?;
        let alpha = LInftyElement::from_pair(p)?;
        Ok(COAComplex(TwistedComplex { name: "compatible O-operator with algebra", alpha, lifted: true }))
    }
}

impl Complex for COAComplex {
    fn name(&self) -> &str {
        self.0.name
    }

    fn dim(&self, n: usize) -> usize {
        self.0.dim(n)
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.0.apply(n, x)
    }
}

/// `C^n = V'_{n-1} ⊕ Hom(M^{⊗(n-1)}, A)` for `n >= 1`, `C^0 = 0`.
pub struct OAComplex(TwistedComplex);

impl OAComplex {
    pub fn new(ctx: &Context, t: &MMap) -> Result<Self> {
        require_ooperator(ctx, t)?;
        let alpha = LInftyElement::from_operator(ctx, t)?;
        Ok(OAComplex(TwistedComplex { name: "O-operator with algebra", alpha, lifted: false }))
    }
}

impl Complex for OAComplex {
    fn name(&self) -> &str {
        self.0.name
    }

    fn dim(&self, n: usize) -> usize {
        self.0.dim(n)
    }

    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.0.apply(n, x)
    }
}

/// `Θ ∘ l̃_k = l_k ∘ Θ^{⊗k}` for `k = 2, 3` on random elements,
/// `Θ(π, (T1, T2)) = (π, T1 + T2)`, and `Θ ∘ δ_cOA = δ_OA ∘ Θ` in degrees
/// `1..=max_degree`.
pub fn verify_theta(p: &OperatorPair, max_degree: usize, samples: usize, rng: &mut impl Rng) -> Result<CheckReport> {
    require_compatible(p)?;
    let (da, dm) = (p.ctx.da(), p.ctx.dm());
    let mut rep = CheckReport::new("Θ is a strict L∞ morphism and a chain map");
    let alpha = LInftyElement::from_pair(p)?;
    let total = LInftyElement::from_operator(&p.ctx, &p.sum())?;
    rep.expect_zero("Θ(α) = α^Tot", &[], crate::report::diff(&alpha.theta().coords(), &total.coords()));
    for s in 0..samples {
        for k in 2..=3usize {
            let degs: Vec<i64> = (0..k).map(|_| rng.gen_range(-1..=1)).collect();
            if degs.iter().sum::<i64>() + 1 < -1 {
                continue;
            }
            let xs: Vec<LInftyElement> = degs.iter().map(|&d| sample::linfty(rng, d, da, dm, true)).collect();
            let refs: Vec<&LInftyElement> = xs.iter().collect();
            let lhs = l_lifted(&refs)?.theta();
            let th: Vec<LInftyElement> = xs.iter().map(LInftyElement::theta).collect();
            let trefs: Vec<&LInftyElement> = th.iter().collect();
            let rhs = l_base(&trefs)?;
            rep.expect_zero("Θ l̃_k = l_k Θ", &[k, s], crate::report::diff(&lhs.coords(), &rhs.coords()));
        }
        for n in 1..=max_degree {
            let x = sample::linfty(rng, n as i64 - 2, da, dm, true);
            let lhs = signed_twisted(&alpha, &x, true)?.theta();
            let rhs = signed_twisted(&total, &x.theta(), false)?;
            rep.expect_zero("Θ δ_cOA = δ_OA Θ", &[n, s], crate::report::diff(&lhs.coords(), &rhs.coords()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::complex::squares_to_zero;

    fn dual() -> Context {
        Context::adjoint(Algebra::from_ints(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap())
    }

    fn nil() -> MMap {
        MMap::from_coords(1, 2, 2, [0, 1, 0, 0].iter().map(|&x| Scalar::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn structure_is_maurer_cartan() {
        let ctx = dual();
        let a = LInftyElement::from_operator(&ctx, &nil()).unwrap();
        assert!(mc_check(&a).unwrap().passed);
        let p = OperatorPair::new(ctx, nil(), nil().scaled(&-Scalar::one())).unwrap();
        assert!(mc_check(&LInftyElement::from_pair(&p).unwrap()).unwrap().passed);
    }

    #[test]
    fn coords_round_trip() {
        let mut r = sample::rng(3);
        for d in -1..=2 {
            for lifted in [false, true] {
                let x = sample::linfty(&mut r, d, 2, 1, lifted);
                let c = x.coords();
                assert_eq!(c.len(), LInftyElement::coord_len(d, 2, 1, lifted));
                assert_eq!(LInftyElement::from_coords(d, 2, 1, lifted, &c).unwrap(), x);
            }
        }
    }

    #[test]
    fn twisted_complexes_square_to_zero() {
        let ctx = dual();
        let p = OperatorPair::new(ctx.clone(), nil(), nil().scaled(&-Scalar::one())).unwrap();
        let coa = COAComplex::new(&p).unwrap();
        let oa = OAComplex::new(&ctx, &nil()).unwrap();
        for n in 0..3 {
            assert!(squares_to_zero(&coa, n).unwrap(), "cOA degree {n}");
            assert!(squares_to_zero(&oa, n).unwrap(), "OA degree {n}");
        }
    }
}
