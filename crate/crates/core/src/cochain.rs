//! Multilinear maps `M^n -> A`, tuples of them, and the derived and lifted
//! brackets.

use serde::Serialize;

use crate::algebra::{Algebra, Bimodule};
use crate::error::{ensure_dims, Error, Result};
use crate::scalar::{axpy, zero_vec, Scalar};
use crate::tensor::{multi_indices, Tensor};

/// An associative algebra together with a bimodule over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub alg: Algebra,
    pub bim: Bimodule,
}

impl Context {
    pub fn new(alg: Algebra, bim: Bimodule) -> Result<Self> {
        ensure_dims("bimodule algebra dimension", bim.algebra_dim(), alg.dim())?;
        Ok(Context { alg, bim })
    }

    pub fn adjoint(alg: Algebra) -> Self {
        let bim = crate::algebra::adjoint_bimodule(&alg);
        Context { alg, bim }
    }

    pub fn da(&self) -> usize {
        self.alg.dim()
    }

    pub fn dm(&self) -> usize {
        self.bim.module_dim()
    }
}

/// An element of `Hom(M^{⊗n}, A)`; arity 0 is an element of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MMap {
    tensor: Tensor,
}

impl MMap {
    pub fn zero(arity: usize, da: usize, dm: usize) -> Self {
        MMap { tensor: Tensor::zeros(vec![dm; arity], da) }
    }

    pub fn from_tensor(tensor: Tensor) -> Result<Self> {
        let dm = tensor.in_dims().first().copied();
        if let Some(dm) = dm {
            if tensor.in_dims().iter().any(|&d| d != dm) {
                return Err(Error::Input("all inputs of a map M^n -> A must share one dimension".into()));
            }
        }
        Ok(MMap { tensor })
    }

    /// From an element of `A`.
    pub fn constant(a: Vec<Scalar>) -> Self {
        let d = a.len();
        MMap { tensor: Tensor::from_data(vec![], d, a).expect("shape") }
    }

    /// From a `dim A x dim M` matrix acting on column vectors.
    pub fn from_matrix(m: &[Vec<Scalar>], dm: usize) -> Result<Self> {
        let da = m.len();
        let mut t = Tensor::zeros(vec![dm], da);
        for (k, row) in m.iter().enumerate() {
            ensure_dims(&format!("operator row {k}"), row.len(), dm)?;
            for (u, x) in row.iter().enumerate() {
                t.slot_mut(&[u])[k] = x.clone();
            }
        }
        Ok(MMap { tensor: t })
    }

    pub fn to_matrix(&self) -> Vec<Vec<Scalar>> {
        assert_eq!(self.arity(), 1, "only arity-1 maps are matrices");
        let dm = self.dm();
        (0..self.da()).map(|k| (0..dm).map(|u| self.tensor.slot(&[u])[k].clone()).collect()).collect()
    }

    pub fn arity(&self) -> usize {
        self.tensor.arity()
    }

    pub fn da(&self) -> usize {
        self.tensor.out_dim()
    }

    /// Module dimension; zero-arity maps do not record it.
    pub fn dm(&self) -> usize {
        self.tensor.in_dims().first().copied().unwrap_or(0)
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn eval_basis(&self, idx: &[usize]) -> &[Scalar] {
        self.tensor.slot(idx)
    }

    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        self.tensor.eval(args)
    }

    pub fn plus(&self, o: &MMap) -> MMap {
        MMap { tensor: self.tensor.plus(&o.tensor) }
    }

    pub fn minus(&self, o: &MMap) -> MMap {
        MMap { tensor: self.tensor.minus(&o.tensor) }
    }

    pub fn scaled(&self, c: &Scalar) -> MMap {
        MMap { tensor: self.tensor.scaled(c) }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &MMap) {
        self.tensor.add_scaled(c, &o.tensor);
    }

    pub fn coords(&self) -> &[Scalar] {
        self.tensor.data()
    }

    pub fn from_coords(arity: usize, da: usize, dm: usize, coords: Vec<Scalar>) -> Result<Self> {
        Ok(MMap { tensor: Tensor::from_data(vec![dm; arity], da, coords)? })
    }

    pub fn coord_len(arity: usize, da: usize, dm: usize) -> usize {
        da * dm.pow(arity as u32)
    }

    /// Nested output-first coefficients `coeffs[k][u_1]...[u_n]` as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        fn rec(t: &MMap, k: usize, prefix: &mut Vec<usize>) -> serde_json::Value {
            if prefix.len() == t.arity() {
                return serde_json::Value::String(t.eval_basis(prefix)[k].to_string());
            }
            let v = (0..t.dm())
                .map(|u| {
                    prefix.push(u);
                    let x = rec(t, k, prefix);
                    prefix.pop();
                    x
                })
                .collect();
            serde_json::Value::Array(v)
        }
        let coeffs: Vec<serde_json::Value> = (0..self.da()).map(|k| rec(self, k, &mut Vec::new())).collect();
        serde_json::json!({ "arity": self.arity(), "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value, da: usize, dm: usize) -> Result<Self> {
        let arity = v
            .get("arity")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Input("map needs an integer \"arity\"".into()))? as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Input("map needs a \"coeffs\" array".into()))?;
        ensure_dims("coeffs length", coeffs.len(), da)?;
        let mut m = MMap::zero(arity, da, dm);
        for (k, c) in coeffs.iter().enumerate() {
            for idx in multi_indices(&vec![dm; arity]) {
                let mut cur = c;
                for &u in &idx {
                    cur = cur
                        .get(u)
                        .ok_or_else(|| Error::Input(format!("coeffs[{k}] is too short")))?;
                }
                let x: Scalar = serde_json::from_value(cur.clone())
                    .map_err(|e| Error::Input(format!("coeffs[{k}]{idx:?}: {e}")))?;
                m.tensor.slot_mut(&idx)[k] = x;
            }
        }
        Ok(m)
    }
}

impl Serialize for MMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Evaluates `t` on basis vectors `before`, then the vector `v`, then basis
/// vectors `after`.
pub(crate) fn eval_with_vector(t: &Tensor, before: &[usize], v: &[Scalar], after: &[usize]) -> Vec<Scalar> {
    let mut out = zero_vec(t.out_dim());
    let mut idx: Vec<usize> = Vec::with_capacity(before.len() + 1 + after.len());
    idx.extend_from_slice(before);
    idx.push(0);
    idx.extend_from_slice(after);
    let pos = before.len();
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        idx[pos] = j;
        axpy(&mut out, x, t.slot(&idx));
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    crate::scalar::unit_vec(n, i)
}

/// The graded Lie bracket on `⊕ Hom(M^{⊗n}, A)`, an arity-`n` map having
/// degree `n`. Arity-0 arguments go through the same formula, which then
/// reduces to the commutator expressions for `[P, a]` and `[a, b]`.
pub fn derived_bracket(ctx: &Context, p: &MMap, q: &MMap) -> Result<MMap> {
    check_map(ctx, p)?;
    check_map(ctx, q)?;
    let (m, n) = (p.arity(), q.arity());
    let (da, dm) = (ctx.da(), ctx.dm());
    let sgn = |k: usize| Scalar::sign(k as i64);
    let mn = m * n;
    let tensor = Tensor::from_fn(vec![dm; m + n], da, |w| {
        let mut out = zero_vec(da);
        for i in 1..=m {
            // P(u_1..u_{i-1}, Q(u_i..u_{i+n-1}) . u_{i+n}, ..., u_{m+n})
            let qv = q.eval_basis(&w[i - 1..i - 1 + n]);
            let x = ctx.bim.act_left(qv, &unit(dm, w[i + n - 1]));
            let val = eval_with_vector(p.tensor(), &w[..i - 1], &x, &w[i + n..]);
            axpy(&mut out, &sgn((i - 1) * n), &val);
            // P(u_1..u_{i-1}, u_i . Q(u_{i+1}..u_{i+n}), u_{i+n+1}, ...)
            let qv = q.eval_basis(&w[i..i + n]);
            let x = ctx.bim.act_right(&unit(dm, w[i - 1]), qv);
            let val = eval_with_vector(p.tensor(), &w[..i - 1], &x, &w[i + n..]);
            axpy(&mut out, &-sgn(i * n), &val);
        }
        for i in 1..=n {
            let pv = p.eval_basis(&w[i - 1..i - 1 + m]);
            let x = ctx.bim.act_left(pv, &unit(dm, w[i + m - 1]));
            let val = eval_with_vector(q.tensor(), &w[..i - 1], &x, &w[i + m..]);
            axpy(&mut out, &-sgn(mn + (i - 1) * m), &val);
            let pv = p.eval_basis(&w[i..i + m]);
            let x = ctx.bim.act_right(&unit(dm, w[i - 1]), pv);
            let val = eval_with_vector(q.tensor(), &w[..i - 1], &x, &w[i + m..]);
            axpy(&mut out, &sgn(mn + i * m), &val);
        }
        let pq = ctx.alg.mul(p.eval_basis(&w[..m]), q.eval_basis(&w[m..]));
        axpy(&mut out, &sgn(mn), &pq);
        let qp = ctx.alg.mul(q.eval_basis(&w[..n]), p.eval_basis(&w[n..]));
        axpy(&mut out, &-Scalar::one(), &qp);
        out
    });
    Ok(MMap { tensor })
}

fn check_map(ctx: &Context, f: &MMap) -> Result<()> {
    if f.da() != ctx.da() || (f.arity() > 0 && f.dm() != ctx.dm()) {
        return Err(Error::Input(format!(
            "map of shape ({} -> {}) does not fit context (dim A = {}, dim M = {})",
            f.dm(),
            f.da(),
            ctx.da(),
            ctx.dm()
        )));
    }
    Ok(())
}

/// An element of the compatible graded Lie algebra: one element of `A` in
/// degree 0, and `n + 1` maps of arity `n` in degree `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCochain {
    degree: usize,
    parts: Vec<MMap>,
}

impl TupleCochain {
    pub fn new(degree: usize, parts: Vec<MMap>) -> Result<Self> {
        let want = Self::part_count(degree);
        if parts.len() != want {
            return Err(Error::Input(format!(
                "a degree-{degree} cochain has {want} parts, got {}",
                parts.len()
            )));
        }
        if parts.iter().any(|p| p.arity() != degree) {
            return Err(Error::Input(format!("all parts of a degree-{degree} cochain need arity {degree}")));
        }
        let da = parts[0].da();
        if parts.iter().any(|p| p.da() != da) {
            return Err(Error::Input("parts disagree on dim A".into()));
        }
        Ok(TupleCochain { degree, parts })
    }

    pub fn part_count(degree: usize) -> usize {
        if degree == 0 {
            1
        } else {
            degree + 1
        }
    }

    pub fn zero(degree: usize, da: usize, dm: usize) -> Self {
        TupleCochain { degree, parts: vec![MMap::zero(degree, da, dm); Self::part_count(degree)] }
    }

    pub fn pair(t1: MMap, t2: MMap) -> Result<Self> {
        TupleCochain::new(1, vec![t1, t2])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[MMap] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(MMap::is_zero)
    }

    pub fn plus(&self, o: &TupleCochain) -> TupleCochain {
        assert_eq!(self.degree, o.degree);
        TupleCochain { degree: self.degree, parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> TupleCochain {
        TupleCochain { degree: self.degree, parts: self.parts.iter().map(|a| a.scaled(c)).collect() }
    }

    /// Parts concatenated in order.
    pub fn coords(&self) -> Vec<Scalar> {
        self.parts.iter().flat_map(|p| p.coords().iter().cloned()).collect()
    }

    pub fn coord_len(degree: usize, da: usize, dm: usize) -> usize {
        Self::part_count(degree) * MMap::coord_len(degree, da, dm)
    }

    pub fn from_coords(degree: usize, da: usize, dm: usize, coords: &[Scalar]) -> Result<Self> {
        ensure_dims("cochain coordinates", coords.len(), Self::coord_len(degree, da, dm))?;
        let step = MMap::coord_len(degree, da, dm);
        let parts = (0..Self::part_count(degree))
            .map(|k| MMap::from_coords(degree, da, dm, coords[k * step..(k + 1) * step].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        TupleCochain::new(degree, parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "parts": self.parts.iter().map(MMap::to_json).collect::<Vec<_>>(),
        })
    }
}

impl Serialize for TupleCochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Component-convolution bracket: the `i`-th part of the result is
/// `sum_{a + b = i + 1} [x_a, y_b]`.
pub fn lifted_bracket(ctx: &Context, x: &TupleCochain, y: &TupleCochain) -> Result<TupleCochain> {
    let degree = x.degree + y.degree;
    let len = TupleCochain::part_count(degree);
    let (da, dm) = (ctx.da(), ctx.dm());
    let mut parts = vec![MMap::zero(degree, da, dm); len];
    for (a, xa) in x.parts.iter().enumerate() {
        for (b, yb) in y.parts.iter().enumerate() {
            let br = derived_bracket(ctx, xa, yb)?;
            parts[a + b].add_scaled(&Scalar::one(), &br);
        }
    }
    TupleCochain::new(degree, parts)
}

/// Sum of the parts.
pub fn theta(x: &TupleCochain) -> MMap {
    let mut out = x.parts[0].clone();
    for p in &x.parts[1..] {
        out = out.plus(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual() -> Context {
        Context::adjoint(Algebra::from_ints(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap())
    }

    fn op(m: &[&[i64]]) -> MMap {
        let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        MMap::from_matrix(&rows, rows[0].len()).unwrap()
    }

    #[test]
    fn nilpotent_operator_is_maurer_cartan() {
        let ctx = dual();
        // T(1) = x, T(x) = 0
        let t = op(&[&[0, 0], &[1, 0]]);
        assert!(derived_bracket(&ctx, &t, &t).unwrap().is_zero());
        let bad = op(&[&[0, 0], &[0, 1]]);
        assert!(!derived_bracket(&ctx, &bad, &bad).unwrap().is_zero());
    }

    #[test]
    fn elements_commute_in_commutative_algebra() {
        let ctx = dual();
        let a = MMap::constant(vec![Scalar::from_int(2), Scalar::from_int(3)]);
        let b = MMap::constant(vec![Scalar::from_int(-1), Scalar::from_int(5)]);
        assert!(derived_bracket(&ctx, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn lifted_bracket_of_split_pair() {
        let ctx = dual();
        let t = op(&[&[0, 1], &[1, 0]]);
        let z = MMap::zero(1, 2, 2);
        let x = TupleCochain::pair(t.clone(), z.clone()).unwrap();
        let y = TupleCochain::pair(z, t.clone()).unwrap();
        let br = lifted_bracket(&ctx, &x, &y).unwrap();
        assert!(br.parts()[0].is_zero());
        assert_eq!(br.parts()[1], derived_bracket(&ctx, &t, &t).unwrap());
        assert!(br.parts()[2].is_zero());
    }

    #[test]
    fn theta_examples() {
        let t = op(&[&[0, 0], &[1, 0]]);
        let x = TupleCochain::pair(t.clone(), t.scaled(&-Scalar::one())).unwrap();
        assert!(theta(&x).is_zero());
        let a = TupleCochain::new(0, vec![MMap::constant(vec![Scalar::one(), Scalar::zero()])]).unwrap();
        assert_eq!(theta(&a), a.parts()[0]);
    }

    #[test]
    fn json_round_trip() {
        let ctx = dual();
        let t = op(&[&[0, 3], &[1, -2]]);
        let f = derived_bracket(&ctx, &t, &t).unwrap();
        let back = MMap::from_json(&f.to_json(), 2, 2).unwrap();
        assert_eq!(back, f);
        // output index comes first in the JSON layout
        assert_eq!(t.to_json()["coeffs"][0][1], serde_json::json!("3"));
    }
}
