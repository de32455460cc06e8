//! Exact sparse linear algebra over the rationals.
//!
//! Every cohomology computation in this crate reduces to ranks, kernels and
//! solvability of sparse coboundary matrices. Ranks use fraction-free
//! (Bareiss) elimination on integer rows with sparsest-row pivoting; kernels
//! and particular solutions use a sparse rational Gauss-Jordan sweep. The two
//! routes are independent, which the tests exploit (`rank + nullity = cols`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_zero_vec, zero_vec, Scalar};

type SparseRow = BTreeMap<usize, Scalar>;

/// A sparse rational matrix. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![SparseRow::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Input(format!("ragged matrix row {i}")));
            }
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_dense(&dense).expect("rectangular literal")
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Input(format!("column {j} has length {}, expected {rows}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(&j).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.data[i].iter().map(|(j, x)| (*j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| {
                let mut r = zero_vec(self.cols);
                for (j, x) in &self.data[i] {
                    r[*j] = x.clone();
                }
                r
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Input(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, x)| x * &v[*j]).sum())
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseRow::new();
            for (k, x) in row {
                for (j, y) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Scalar::zero) += x * y;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    /// Appends `b` as an extra column.
    pub fn augment(&self, b: &[Scalar]) -> Result<Matrix> {
        if b.len() != self.rows {
            return Err(Error::Input(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let mut out = self.clone();
        out.cols += 1;
        for (i, x) in b.iter().enumerate() {
            out.set(i, self.cols, x.clone());
        }
        Ok(out)
    }
}

/// A subspace of `k^n` given by a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| crate::scalar::unit_vec(ambient_dim, i)).collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors, reduced to an independent basis.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::Input(format!(
                    "vector of length {} in ambient dimension {ambient_dim}",
                    v.len()
                )));
            }
        }
        let rref = Rref::of_rows(ambient_dim, vectors.iter().map(|v| to_sparse(v)).collect());
        let basis = rref.rows.iter().map(|r| to_dense(r, ambient_dim)).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    /// Wraps a basis after verifying independence by rank.
    pub fn from_basis(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = Matrix::from_dense(&basis)
            .map_err(|e| Error::Input(format!("subspace basis: {e}")))?;
        if !basis.is_empty() && m.cols() != ambient_dim {
            return Err(Error::Input("basis vectors have the wrong length".into()));
        }
        if rank(&m) != basis.len() {
            return Err(Error::Input("basis vectors are linearly dependent".into()));
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let m = self.basis_matrix_columns();
        solve(&m, v).ok().flatten().is_some()
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix_columns(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis).expect("consistent basis")
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Input("intersecting subspaces of different ambient spaces".into()));
        }
        // x = B c = C d  <=>  [B | -C] (c,d) = 0
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(self.ambient_dim, &cols)?;
        let ker = kernel_basis(&m);
        let vecs: Vec<Vec<Scalar>> = ker
            .basis
            .iter()
            .map(|k| {
                let mut v = zero_vec(self.ambient_dim);
                for (c, b) in k.iter().zip(&self.basis) {
                    crate::scalar::axpy(&mut v, c, b);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, &vecs)
    }
}

fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn to_dense(r: &SparseRow, n: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    for (j, x) in r {
        v[*j] = x.clone();
    }
    v
}

/// Row rank by fraction-free elimination.
///
/// Each row is scaled to a primitive integer row first. The pivot at each
/// step is the remaining row with the fewest nonzeros among those hitting the
/// current column; every remaining row is then updated with the Bareiss
/// recurrence `a <- (p*a - c*pivot) / prev`, whose division is exact.
pub fn rank(m: &Matrix) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigInt>> =
        m.data.iter().filter(|r| !r.is_empty()).map(integer_row).collect();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for col in 0..m.cols {
        if rows.is_empty() {
            break;
        }
        let pivot_idx = rows
            .iter()
            .enumerate()
            .filter(|(_, row)| row.contains_key(&col))
            .min_by_key(|(_, row)| row.len())
            .map(|(i, _)| i);
        let Some(pi) = pivot_idx else { continue };
        let pivot_row = rows.swap_remove(pi);
        let p = pivot_row[&col].clone();
        for row in rows.iter_mut() {
            let c = row.remove(&col).unwrap_or_else(BigInt::zero);
            let mut next = BTreeMap::new();
            let keys: std::collections::BTreeSet<usize> =
                row.keys().chain(pivot_row.keys()).copied().filter(|&k| k > col).collect();
            for k in keys {
                let a = row.get(&k).cloned().unwrap_or_else(BigInt::zero);
                let b = pivot_row.get(&k).cloned().unwrap_or_else(BigInt::zero);
                let num = &p * a - &c * b;
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                if !q.is_zero() {
                    next.insert(k, q);
                }
            }
            *row = next;
        }
        rows.retain(|row| !row.is_empty());
        prev = p;
        r += 1;
    }
    r
}

fn integer_row(row: &SparseRow) -> BTreeMap<usize, BigInt> {
    let lcm = row.values().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    row.iter()
        .map(|(j, x)| (*j, x.numer() * (&lcm / x.denom())))
        .collect()
}

/// Reduced row echelon form kept sparse: pivot columns and normalized rows.
struct Rref {
    pivots: Vec<usize>,
    rows: Vec<SparseRow>,
}

impl Rref {
    fn of_rows(cols: usize, input: Vec<SparseRow>) -> Rref {
        let mut rows: Vec<SparseRow> = input.into_iter().filter(|r| !r.is_empty()).collect();
        let mut done: Vec<SparseRow> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..cols {
            let Some(pi) = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&col))
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i)
            else {
                continue;
            };
            let mut prow = rows.swap_remove(pi);
            let inv = prow[&col].inv().expect("nonzero pivot");
            for x in prow.values_mut() {
                *x *= &inv;
            }
            for r in rows.iter_mut().chain(done.iter_mut()) {
                if let Some(c) = r.get(&col).cloned() {
                    for (k, x) in &prow {
                        let e = r.entry(*k).or_insert_with(Scalar::zero);
                        *e -= &c * x;
                    }
                    r.retain(|_, x| !x.is_zero());
                }
            }
            rows.retain(|r| !r.is_empty());
            done.push(prow);
            pivots.push(col);
        }
        Rref { pivots, rows: done }
    }
}

/// Basis of `{v : m v = 0}`; each vector is checked against `m`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let rref = Rref::of_rows(m.cols, m.data.clone());
    let pivot_set: std::collections::BTreeSet<usize> = rref.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = zero_vec(m.cols);
        v[free] = Scalar::one();
        for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
            if let Some(x) = row.get(&free) {
                v[pc] = -x;
            }
        }
        debug_assert!(is_zero_vec(&m.mul_vec(&v).expect("shape")));
        basis.push(v);
    }
    assert!(
        basis.iter().all(|v| is_zero_vec(&m.mul_vec(v).expect("shape"))),
        "kernel vector failed verification"
    );
    Subspace { ambient_dim: m.cols, basis }
}

/// Some `x` with `m x = b`, or `None` when `b` is outside the image.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let aug = m.augment(b)?;
    let rref = Rref::of_rows(aug.cols, aug.data.clone());
    if rref.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vec(m.cols);
    for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
        if let Some(v) = row.get(&m.cols) {
            x[pc] = v.clone();
        }
    }
    if m.mul_vec(&x)? != b {
        return Err(Error::Logic("solution failed re-verification".into()));
    }
    Ok(Some(x))
}

/// `dim(cycles) - dim(boundaries)` after checking the containment.
pub fn quotient_dim(cycles: &Subspace, boundaries: &Subspace) -> Result<usize> {
    if cycles.ambient_dim != boundaries.ambient_dim {
        return Err(Error::Input("subspaces live in different ambient spaces".into()));
    }
    for b in &boundaries.basis {
        if !cycles.contains(b) {
            return Err(Error::Logic("a boundary is not a cycle; the differential does not square to zero".into()));
        }
    }
    Ok(cycles.dim() - boundaries.dim())
}

/// Plain dense Gaussian elimination over the rationals. Slow; kept as an
/// independent reference for [`rank`].
pub fn rank_dense(m: &Matrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero");
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
