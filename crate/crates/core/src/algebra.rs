//! Associative algebras and bimodules given by structure constants, and
//! their compatible variants.

use crate::error::{ensure_dims, Error, Result};
use crate::report::{diff, CheckReport};
use crate::scalar::{unit_vec, Scalar};
use crate::tensor::{multi_indices, Tensor};

/// `mu.slot([i, j])` is `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    mu: Tensor,
}

impl Algebra {
    pub fn new(dim: usize, mu: Tensor) -> Result<Self> {
        if mu.in_dims() != [dim, dim] || mu.out_dim() != dim {
            return Err(Error::Input(format!("product tensor shape does not match dimension {dim}")));
        }
        Ok(Algebra { dim, mu })
    }

    /// From nested `mu[i][j][k]` coefficients.
    pub fn from_table(mu: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let dim = mu.len();
        let mut t = Tensor::zeros(vec![dim, dim], dim);
        for (i, row) in mu.iter().enumerate() {
            ensure_dims(&format!("mu[{i}]"), row.len(), dim)?;
            for (j, v) in row.iter().enumerate() {
                ensure_dims(&format!("mu[{i}][{j}]"), v.len(), dim)?;
                t.slot_mut(&[i, j]).clone_from_slice(v);
            }
        }
        Algebra::new(dim, t)
    }

    pub fn from_ints(mu: &[&[&[i64]]]) -> Result<Self> {
        let t: Vec<Vec<Vec<Scalar>>> = mu
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .collect();
        Algebra::from_table(&t)
    }

    pub fn zero(dim: usize) -> Self {
        Algebra { dim, mu: Tensor::zeros(vec![dim, dim], dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> &Tensor {
        &self.mu
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mu.eval(&[a, b])
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[Scalar] {
        self.mu.slot(&[i, j])
    }

    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.mul_basis(i, j).to_vec()).collect())
            .collect()
    }

    /// `lambda * self + eta * other` as a product tensor.
    pub fn combine(&self, lambda: &Scalar, other: &Algebra, eta: &Scalar) -> Result<Algebra> {
        ensure_dims("algebra dimension", other.dim, self.dim)?;
        let mut t = self.mu.scaled(lambda);
        t.add_scaled(eta, &other.mu);
        Algebra::new(self.dim, t)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.dim, i)
    }
}

/// Left action `left.slot([i, u])` is `e_i . m_u`; right action
/// `right.slot([u, i])` is `m_u . e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra_dim: usize,
    module_dim: usize,
    left: Tensor,
    right: Tensor,
}

impl Bimodule {
    pub fn new(algebra_dim: usize, module_dim: usize, left: Tensor, right: Tensor) -> Result<Self> {
        if left.in_dims() != [algebra_dim, module_dim] || left.out_dim() != module_dim {
            return Err(Error::Input("left action tensor has the wrong shape".into()));
        }
        if right.in_dims() != [module_dim, algebra_dim] || right.out_dim() != module_dim {
            return Err(Error::Input("right action tensor has the wrong shape".into()));
        }
        Ok(Bimodule { algebra_dim, module_dim, left, right })
    }

    /// From nested `left[i][u][v]` and `right[u][i][v]`.
    pub fn from_tables(
        algebra_dim: usize,
        module_dim: usize,
        left: &[Vec<Vec<Scalar>>],
        right: &[Vec<Vec<Scalar>>],
    ) -> Result<Self> {
        let l = nested3(left, algebra_dim, module_dim, module_dim, "left")?;
        let r = nested3(right, module_dim, algebra_dim, module_dim, "right")?;
        Bimodule::new(algebra_dim, module_dim, l, r)
    }

    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        Bimodule {
            algebra_dim,
            module_dim,
            left: Tensor::zeros(vec![algebra_dim, module_dim], module_dim),
            right: Tensor::zeros(vec![module_dim, algebra_dim], module_dim),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn left(&self) -> &Tensor {
        &self.left
    }

    pub fn right(&self) -> &Tensor {
        &self.right
    }

    pub fn act_left(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.left.eval(&[a, m])
    }

    pub fn act_right(&self, m: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.right.eval(&[m, a])
    }

    pub fn left_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        table3(&self.left)
    }

    pub fn right_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        table3(&self.right)
    }

    pub fn combine(&self, lambda: &Scalar, other: &Bimodule, eta: &Scalar) -> Result<Bimodule> {
        ensure_dims("algebra dimension", other.algebra_dim, self.algebra_dim)?;
        ensure_dims("module dimension", other.module_dim, self.module_dim)?;
        let mut l = self.left.scaled(lambda);
        l.add_scaled(eta, &other.left);
        let mut r = self.right.scaled(lambda);
        r.add_scaled(eta, &other.right);
        Bimodule::new(self.algebra_dim, self.module_dim, l, r)
    }
}

pub(crate) fn nested3(
    t: &[Vec<Vec<Scalar>>],
    d0: usize,
    d1: usize,
    d2: usize,
    what: &str,
) -> Result<Tensor> {
    ensure_dims(what, t.len(), d0)?;
    let mut out = Tensor::zeros(vec![d0, d1], d2);
    for (i, row) in t.iter().enumerate() {
        ensure_dims(&format!("{what}[{i}]"), row.len(), d1)?;
        for (j, v) in row.iter().enumerate() {
            ensure_dims(&format!("{what}[{i}][{j}]"), v.len(), d2)?;
            out.slot_mut(&[i, j]).clone_from_slice(v);
        }
    }
    Ok(out)
}

pub(crate) fn table3(t: &Tensor) -> Vec<Vec<Vec<Scalar>>> {
    let d = t.in_dims();
    (0..d[0]).map(|i| (0..d[1]).map(|j| t.slot(&[i, j]).to_vec()).collect()).collect()
}

pub fn adjoint_bimodule(alg: &Algebra) -> Bimodule {
    Bimodule {
        algebra_dim: alg.dim,
        module_dim: alg.dim,
        left: alg.mu.clone(),
        right: alg.mu.clone(),
    }
}

/// Dual module on the dual basis: `(a.f)(b) = f(b a)` and `(f.a)(b) = f(a b)`.
pub fn coadjoint_bimodule(alg: &Algebra) -> Bimodule {
    let d = alg.dim;
    // coefficient of f_v in e_i . f_u is (e_i . f_u)(e_v) = f_u(e_v e_i)
    let left = Tensor::from_fn(vec![d, d], d, |ix| {
        (0..d).map(|v| alg.mul_basis(v, ix[0])[ix[1]].clone()).collect()
    });
    // coefficient of f_v in f_u . e_i is f_u(e_i e_v)
    let right = Tensor::from_fn(vec![d, d], d, |ix| {
        (0..d).map(|v| alg.mul_basis(ix[1], v)[ix[0]].clone()).collect()
    });
    Bimodule { algebra_dim: d, module_dim: d, left, right }
}

pub fn check_associative(alg: &Algebra) -> CheckReport {
    let mut rep = CheckReport::new("associativity");
    let d = alg.dim;
    for ix in multi_indices(&[d, d, d]) {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let lhs = alg.mul(alg.mul_basis(i, j), &alg.unit(k));
        let rhs = alg.mul(&alg.unit(i), alg.mul_basis(j, k));
        rep.expect_zero("(ab)c = a(bc)", &ix, diff(&lhs, &rhs));
    }
    rep
}

fn ensure_context(alg: &Algebra, bim: &Bimodule) -> Result<()> {
    ensure_dims("bimodule algebra dimension", bim.algebra_dim, alg.dim)
}

pub fn check_bimodule(alg: &Algebra, bim: &Bimodule) -> Result<CheckReport> {
    ensure_context(alg, bim)?;
    let mut rep = CheckReport::new("bimodule");
    let (da, dm) = (alg.dim, bim.module_dim);
    for ix in multi_indices(&[da, da, dm]) {
        let (a, b, u) = (unit_vec(da, ix[0]), unit_vec(da, ix[1]), unit_vec(dm, ix[2]));
        let lhs = bim.act_left(&alg.mul(&a, &b), &u);
        let rhs = bim.act_left(&a, &bim.act_left(&b, &u));
        rep.expect_zero("(ab)m = a(bm)", &ix, diff(&lhs, &rhs));
        let lhs = bim.act_right(&bim.act_right(&u, &a), &b);
        let rhs = bim.act_right(&u, &alg.mul(&a, &b));
        rep.expect_zero("(ma)b = m(ab)", &[ix[2], ix[0], ix[1]], diff(&lhs, &rhs));
        let lhs = bim.act_right(&bim.act_left(&a, &u), &b);
        let rhs = bim.act_left(&a, &bim.act_right(&u, &b));
        rep.expect_zero("(am)b = a(mb)", &[ix[0], ix[2], ix[1]], diff(&lhs, &rhs));
    }
    Ok(rep)
}

/// Two products on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleAlgebra {
    pub first: Algebra,
    pub second: Algebra,
}

impl CompatibleAlgebra {
    pub fn new(first: Algebra, second: Algebra) -> Result<Self> {
        ensure_dims("compatible algebra dimension", second.dim, first.dim)?;
        Ok(CompatibleAlgebra { first, second })
    }

    pub fn dim(&self) -> usize {
        self.first.dim
    }

    pub fn sum(&self) -> Algebra {
        self.first.combine(&Scalar::one(), &self.second, &Scalar::one()).expect("same dimension")
    }
}

/// Two bimodule structures on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleBimodule {
    pub first: Bimodule,
    pub second: Bimodule,
}

impl CompatibleBimodule {
    pub fn new(first: Bimodule, second: Bimodule) -> Result<Self> {
        ensure_dims("algebra dimension", second.algebra_dim, first.algebra_dim)?;
        ensure_dims("module dimension", second.module_dim, first.module_dim)?;
        Ok(CompatibleBimodule { first, second })
    }

    pub fn module_dim(&self) -> usize {
        self.first.module_dim
    }

    pub fn sum(&self) -> Bimodule {
        self.first.combine(&Scalar::one(), &self.second, &Scalar::one()).expect("same shape")
    }

    pub fn adjoint(c: &CompatibleAlgebra) -> Self {
        CompatibleBimodule { first: adjoint_bimodule(&c.first), second: adjoint_bimodule(&c.second) }
    }
}

pub fn check_compatible_associative(c: &CompatibleAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("compatible associativity");
    let mut first = check_associative(&c.first);
    first.check = "first product".into();
    rep.absorb(first);
    let mut second = check_associative(&c.second);
    second.check = "second product".into();
    rep.absorb(second);
    let (p, q) = (&c.first, &c.second);
    let d = c.dim();
    for ix in multi_indices(&[d, d, d]) {
        let (a, b, cc) = (unit_vec(d, ix[0]), unit_vec(d, ix[1]), unit_vec(d, ix[2]));
        let lhs: Vec<Scalar> = add(&q.mul(&p.mul(&a, &b), &cc), &p.mul(&q.mul(&a, &b), &cc));
        let rhs: Vec<Scalar> = add(&q.mul(&a, &p.mul(&b, &cc)), &p.mul(&a, &q.mul(&b, &cc)));
        rep.expect_zero("(a.1 b).2 c + (a.2 b).1 c = a.2 (b.1 c) + a.1 (b.2 c)", &ix, diff(&lhs, &rhs));
    }
    let sum = check_associative(&c.sum());
    if rep.passed && !sum.passed {
        rep.fail("summed product fails although all componentwise identities hold", &[]);
    }
    rep
}

pub fn check_compatible_bimodule(c: &CompatibleAlgebra, cb: &CompatibleBimodule) -> Result<CheckReport> {
    ensure_context(&c.first, &cb.first)?;
    let mut rep = CheckReport::new("compatible bimodule");
    let mut first = check_bimodule(&c.first, &cb.first)?;
    first.check = "first bimodule".into();
    rep.absorb(first);
    let mut second = check_bimodule(&c.second, &cb.second)?;
    second.check = "second bimodule".into();
    rep.absorb(second);
    let (p, q) = (&c.first, &c.second);
    let (m1, m2) = (&cb.first, &cb.second);
    let (da, dm) = (c.dim(), cb.module_dim());
    for ix in multi_indices(&[da, da, dm]) {
        let (a, b, u) = (unit_vec(da, ix[0]), unit_vec(da, ix[1]), unit_vec(dm, ix[2]));
        let lhs = add(&m2.act_left(&p.mul(&a, &b), &u), &m1.act_left(&q.mul(&a, &b), &u));
        let rhs = add(&m1.act_left(&a, &m2.act_left(&b, &u)), &m2.act_left(&a, &m1.act_left(&b, &u)));
        rep.expect_zero("(a.1 b).2 u + (a.2 b).1 u = a.1 (b.2 u) + a.2 (b.1 u)", &ix, diff(&lhs, &rhs));
        let lhs = add(&m2.act_right(&m1.act_left(&a, &u), &b), &m1.act_right(&m2.act_left(&a, &u), &b));
        let rhs = add(&m1.act_left(&a, &m2.act_right(&u, &b)), &m2.act_left(&a, &m1.act_right(&u, &b)));
        rep.expect_zero("(a.1 u).2 b + (a.2 u).1 b = a.1 (u.2 b) + a.2 (u.1 b)", &[ix[0], ix[2], ix[1]], diff(&lhs, &rhs));
        let lhs = add(&m2.act_right(&m1.act_right(&u, &a), &b), &m1.act_right(&m2.act_right(&u, &a), &b));
        let rhs = add(&m1.act_right(&u, &q.mul(&a, &b)), &m2.act_right(&u, &p.mul(&a, &b)));
        rep.expect_zero("(u.1 a).2 b + (u.2 a).1 b = u.1 (a.2 b) + u.2 (a.1 b)", &[ix[2], ix[0], ix[1]], diff(&lhs, &rhs));
    }
    let sum = check_bimodule(&c.sum(), &cb.sum())?;
    if rep.passed && !sum.passed {
        rep.fail("summed bimodule fails although all componentwise identities hold", &[]);
    }
    Ok(rep)
}

pub(crate) fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dual_numbers() -> Algebra {
        // basis {1, x}
        Algebra::from_ints(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap()
    }

    #[test]
    fn dual_numbers_are_associative() {
        assert!(check_associative(&dual_numbers()).passed);
        assert!(check_associative(&Algebra::zero(2)).passed);
    }

    #[test]
    fn non_associative_table_is_caught() {
        // e1 e1 = e2, e2 e1 = e1, all else zero:
        // (e1 e1) e1 = e2 e1 = e1 but e1 (e1 e1) = e1 e2 = 0
        let alg = Algebra::from_ints(&[&[&[0, 1], &[0, 0]], &[&[1, 0], &[0, 0]]]).unwrap();
        let rep = check_associative(&alg);
        assert!(!rep.passed);
        assert_eq!(rep.defects[0].indices, vec![0, 0, 0]);
        assert_eq!(rep.defects[0].defect, vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn standard_bimodules() {
        let a = dual_numbers();
        assert!(check_bimodule(&a, &adjoint_bimodule(&a)).unwrap().passed);
        assert!(check_bimodule(&a, &Bimodule::zero(2, 3)).unwrap().passed);
        let co = coadjoint_bimodule(&a);
        assert!(check_bimodule(&a, &co).unwrap().passed);
        // the unit acts as the identity on the dual basis
        assert_eq!(co.act_left(&a.unit(0), &unit_vec(2, 1)), unit_vec(2, 1));
        assert_eq!(co.act_right(&unit_vec(2, 0), &a.unit(0)), unit_vec(2, 0));
        // (x . f_1)(b) = f_1(b x): nonzero only for b = 1, so x . f_1 = f_0
        assert_eq!(co.act_left(&a.unit(1), &unit_vec(2, 1)), unit_vec(2, 0));
    }

    #[test]
    fn bimodule_dimension_mismatch() {
        let a = dual_numbers();
        assert!(check_bimodule(&a, &Bimodule::zero(3, 1)).is_err());
    }

    #[test]
    fn compatible_examples() {
        let a = dual_numbers();
        let neg = a.combine(&-Scalar::one(), &a, &Scalar::zero()).unwrap();
        let c = CompatibleAlgebra::new(a.clone(), neg).unwrap();
        assert!(check_compatible_associative(&c).passed);
        let c = CompatibleAlgebra::new(a.clone(), a.clone()).unwrap();
        assert!(check_compatible_associative(&c).passed);
        assert!(check_compatible_bimodule(&c, &CompatibleBimodule::adjoint(&c)).unwrap().passed);
        let z = CompatibleBimodule::new(Bimodule::zero(2, 1), Bimodule::zero(2, 1)).unwrap();
        assert!(check_compatible_bimodule(&c, &z).unwrap().passed);
    }
}
