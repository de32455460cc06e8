//! Multilinear maps on `A ⊕ M` stored by input/output signature, and the
//! Gerstenhaber bracket.

use std::collections::BTreeMap;

use crate::cochain::{eval_with_vector, Context, MMap};
use crate::error::{Error, Result};
use crate::scalar::{axpy, zero_vec, Scalar};
use crate::tensor::{multi_indices, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    A,
    M,
}

/// Which summand each input comes from, and where the output lands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub inputs: Vec<Space>,
    pub output: Space,
}

impl Signature {
    pub fn new(inputs: Vec<Space>, output: Space) -> Self {
        Signature { inputs, output }
    }

    /// The bidegree `k|l` this component belongs to.
    pub fn bidegree(&self) -> (i64, i64) {
        let ka = self.inputs.iter().filter(|s| **s == Space::A).count() as i64;
        let lm = self.inputs.len() as i64 - ka;
        match self.output {
            Space::A => (ka - 1, lm),
            Space::M => (ka, lm - 1),
        }
    }
}

/// A map `(A ⊕ M)^{⊗n} -> A ⊕ M`, zero on every signature not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMap {
    arity: usize,
    da: usize,
    dm: usize,
    comps: BTreeMap<Signature, Tensor>,
}

impl MixedMap {
    pub fn zero(arity: usize, da: usize, dm: usize) -> Self {
        MixedMap { arity, da, dm, comps: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Gerstenhaber degree, `arity - 1`.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn da(&self) -> usize {
        self.da
    }

    pub fn dm(&self) -> usize {
        self.dm
    }

    fn dim(&self, s: Space) -> usize {
        match s {
            Space::A => self.da,
            Space::M => self.dm,
        }
    }

    pub fn shape_of(&self, sig: &Signature) -> (Vec<usize>, usize) {
        (sig.inputs.iter().map(|s| self.dim(*s)).collect(), self.dim(sig.output))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Signature, &Tensor)> {
        self.comps.iter()
    }

    pub fn component(&self, sig: &Signature) -> Option<&Tensor> {
        self.comps.get(sig)
    }

    /// Adds `t` into the component `sig`; zero tensors are not stored.
    pub fn add_component(&mut self, sig: Signature, t: &Tensor) -> Result<()> {
        if sig.inputs.len() != self.arity {
            return Err(Error::Input("component arity does not match map arity".into()));
        }
        let (ins, out) = self.shape_of(&sig);
        if t.in_dims() != ins.as_slice() || t.out_dim() != out {
            return Err(Error::Input(format!("component {sig:?} has the wrong shape")));
        }
        let entry = self.comps.entry(sig.clone()).or_insert_with(|| Tensor::zeros(ins, out));
        entry.add_assign(t);
        if entry.is_zero() {
            self.comps.remove(&sig);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Tensor::is_zero)
    }

    pub fn plus(&self, o: &MixedMap) -> MixedMap {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), o);
        out
    }

    pub fn scaled(&self, c: &Scalar) -> MixedMap {
        let mut out = MixedMap::zero(self.arity, self.da, self.dm);
        if c.is_zero() {
            return out;
        }
        for (s, t) in &self.comps {
            out.comps.insert(s.clone(), t.scaled(c));
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &MixedMap) {
        assert_eq!(self.arity, o.arity, "adding maps of different arity");
        assert_eq!((self.da, self.dm), (o.da, o.dm), "adding maps over different spaces");
        for (s, t) in &o.comps {
            self.add_component(s.clone(), &t.scaled(c)).expect("shapes agree");
        }
    }

    /// The unique bidegree of the stored components, if there is one.
    pub fn bidegree_of(&self) -> Option<(i64, i64)> {
        let mut degs = self.comps.iter().filter(|(_, t)| !t.is_zero()).map(|(s, _)| s.bidegree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// `π = μ + l + r` for a context.
    pub fn structure(ctx: &Context) -> MixedMap {
        let mut pi = MixedMap::zero(2, ctx.da(), ctx.dm());
        pi.add_component(Signature::new(vec![Space::A, Space::A], Space::A), ctx.alg.mu()).unwrap();
        pi.add_component(Signature::new(vec![Space::A, Space::M], Space::M), ctx.bim.left()).unwrap();
        pi.add_component(Signature::new(vec![Space::M, Space::A], Space::M), ctx.bim.right()).unwrap();
        pi
    }

    /// Builds the bidegree `1|0` map from separate product/action tensors.
    pub fn from_products(da: usize, dm: usize, mu: &Tensor, l: &Tensor, r: &Tensor) -> Result<MixedMap> {
        let mut pi = MixedMap::zero(2, da, dm);
        pi.add_component(Signature::new(vec![Space::A, Space::A], Space::A), mu)?;
        pi.add_component(Signature::new(vec![Space::A, Space::M], Space::M), l)?;
        pi.add_component(Signature::new(vec![Space::M, Space::A], Space::M), r)?;
        Ok(pi)
    }

    /// Embeds `f: M^n -> A` as a bidegree `-1|n` map.
    pub fn from_mmap(f: &MMap, dm: usize) -> MixedMap {
        let mut out = MixedMap::zero(f.arity(), f.da(), dm);
        out.add_component(Signature::new(vec![Space::M; f.arity()], Space::A), f.tensor())
            .expect("shape");
        out
    }

    /// The bidegree `0|0` map `φ + ψ` for `φ: A -> A`, `ψ: M -> M`, both given
    /// as matrices acting on column vectors.
    pub fn from_endomorphisms(phi: &[Vec<Scalar>], psi: &[Vec<Scalar>]) -> Result<MixedMap> {
        let (da, dm) = (phi.len(), psi.len());
        let mut out = MixedMap::zero(1, da, dm);
        let tp = Tensor::from_fn(vec![da], da, |ix| phi.iter().map(|row| row[ix[0]].clone()).collect());
        let ts = Tensor::from_fn(vec![dm], dm, |ix| psi.iter().map(|row| row[ix[0]].clone()).collect());
        out.add_component(Signature::new(vec![Space::A], Space::A), &tp)?;
        out.add_component(Signature::new(vec![Space::M], Space::M), &ts)?;
        Ok(out)
    }

    /// Projection onto the maps `M^n -> A` (the bidegree `-1|n` part).
    pub fn project_m_to_a(&self) -> MMap {
        let sig = Signature::new(vec![Space::M; self.arity], Space::A);
        match self.comps.get(&sig) {
            Some(t) => MMap::from_tensor(t.clone()).expect("uniform inputs"),
            None => MMap::zero(self.arity, self.da, self.dm),
        }
    }

    /// Drops the `M^n -> A` component.
    pub fn without_m_to_a(&self) -> MixedMap {
        let mut out = self.clone();
        out.comps.remove(&Signature::new(vec![Space::M; self.arity], Space::A));
        out
    }

    /// Keeps only components of the given bidegree.
    pub fn bidegree_part(&self, k: i64, l: i64) -> MixedMap {
        let mut out = MixedMap::zero(self.arity, self.da, self.dm);
        for (s, t) in &self.comps {
            if s.bidegree() == (k, l) {
                out.comps.insert(s.clone(), t.clone());
            }
        }
        out
    }

    /// All signatures of arity `n` of bidegree `k|l`.
    pub fn signatures_of_bidegree(n: usize, k: i64, l: i64) -> Vec<Signature> {
        let mut out = Vec::new();
        for mask in 0..(1usize << n) {
            let inputs: Vec<Space> =
                (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { Space::M } else { Space::A }).collect();
            for output in [Space::A, Space::M] {
                let s = Signature::new(inputs.clone(), output);
                if s.bidegree() == (k, l) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }
}

/// `(f ∘_i g)(v_1, ...) = f(v_1, ..., v_{i-1}, g(v_i, ..., v_{i+n}), ...)`, `i` 1-based.
pub fn compose_at(f: &MixedMap, i: usize, g: &MixedMap) -> MixedMap {
    assert!(i >= 1 && i <= f.arity, "insertion slot out of range");
    let arity = f.arity + g.arity - 1;
    let mut out = MixedMap::zero(arity, f.da, f.dm);
    for (sf, tf) in &f.comps {
        for (sg, tg) in &g.comps {
            if sf.inputs[i - 1] != sg.output {
                continue;
            }
            let mut inputs = sf.inputs[..i - 1].to_vec();
            inputs.extend_from_slice(&sg.inputs);
            inputs.extend_from_slice(&sf.inputs[i..]);
            let sig = Signature::new(inputs, sf.output);
            let (ins, od) = out.shape_of(&sig);
            let gn = g.arity;
            let t = Tensor::from_fn(ins.clone(), od, |w| {
                let v = tg.slot(&w[i - 1..i - 1 + gn]);
                if v.iter().all(Scalar::is_zero) {
                    return zero_vec(od);
                }
                eval_with_vector(tf, &w[..i - 1], v, &w[i - 1 + gn..])
            });
            if !t.is_zero() {
                out.add_component(sig, &t).expect("shape");
            }
        }
    }
    out
}

/// `[f,g]_G = Σ_i (-1)^{(i-1)n} f ∘_i g - (-1)^{mn} Σ_i (-1)^{(i-1)m} g ∘_i f`
/// with `m = arity(f) - 1`, `n = arity(g) - 1`.
pub fn gerstenhaber(f: &MixedMap, g: &MixedMap) -> Result<MixedMap> {
    if (f.da, f.dm) != (g.da, g.dm) {
        return Err(Error::Input("Gerstenhaber bracket of maps over different spaces".into()));
    }
    if f.arity == 0 || g.arity == 0 {
        return Err(Error::Input("Gerstenhaber bracket needs arity at least 1".into()));
    }
    let (m, n) = (f.arity - 1, g.arity - 1);
    let mut out = MixedMap::zero(m + n + 1, f.da, f.dm);
    for i in 1..=f.arity {
        out.add_scaled(&Scalar::sign(((i - 1) * n) as i64), &compose_at(f, i, g));
    }
    let outer = -Scalar::sign((m * n) as i64);
    for i in 1..=g.arity {
        let c = &outer * &Scalar::sign(((i - 1) * m) as i64);
        out.add_scaled(&c, &compose_at(g, i, f));
    }
    Ok(out)
}

/// Evaluates `f` on arguments from `A ⊕ M`, each given as `(a, m)`.
pub fn eval_mixed(f: &MixedMap, args: &[(Vec<Scalar>, Vec<Scalar>)]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut a_out = zero_vec(f.da);
    let mut m_out = zero_vec(f.dm);
    for (sig, t) in &f.comps {
        let vs: Vec<&[Scalar]> = sig
            .inputs
            .iter()
            .zip(args)
            .map(|(s, (a, m))| match s {
                Space::A => a.as_slice(),
                Space::M => m.as_slice(),
            })
            .collect();
        let v = t.eval(&vs);
        match sig.output {
            Space::A => axpy(&mut a_out, &Scalar::one(), &v),
            Space::M => axpy(&mut m_out, &Scalar::one(), &v),
        }
    }
    (a_out, m_out)
}

/// Enumerates all signatures of a given arity (used by random generators).
pub fn all_signatures(n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for ins in multi_indices(&vec![2; n]) {
        let inputs: Vec<Space> = ins.iter().map(|&b| if b == 0 { Space::A } else { Space::M }).collect();
        out.push(Signature::new(inputs.clone(), Space::A));
        out.push(Signature::new(inputs, Space::M));
    }
    out
}
