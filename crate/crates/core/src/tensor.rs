//! Dense coefficient tensors for multilinear maps between finite-dimensional
//! spaces.
//!
//! Layout is row-major over the input indices with the output index last, so
//! `f(e_{i_1}, ..., e_{i_n})` is a contiguous slice.

use crate::error::{Error, Result};
use crate::scalar::{axpy, zero_vec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    in_dims: Vec<usize>,
    out_dim: usize,
    data: Vec<Scalar>,
}

/// Iterates all multi-indices of a box in lexicographic order.
pub fn multi_indices(dims: &[usize]) -> MultiIndexIter {
    let empty = dims.iter().any(|&d| d == 0);
    MultiIndexIter { dims: dims.to_vec(), cur: vec![0; dims.len()], done: empty }
}

pub struct MultiIndexIter {
    dims: Vec<usize>,
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut k = self.dims.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cur[k] += 1;
            if self.cur[k] < self.dims[k] {
                break;
            }
            self.cur[k] = 0;
        }
        Some(out)
    }
}

impl Tensor {
    pub fn zeros(in_dims: Vec<usize>, out_dim: usize) -> Self {
        let n = in_dims.iter().product::<usize>() * out_dim;
        Tensor { in_dims, out_dim, data: zero_vec(n) }
    }

    /// Builds a tensor from a function on basis inputs.
    pub fn from_fn(
        in_dims: Vec<usize>,
        out_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> Self {
        let mut t = Tensor::zeros(in_dims, out_dim);
        for idx in multi_indices(&t.in_dims.clone()) {
            let v = f(&idx);
            debug_assert_eq!(v.len(), out_dim);
            t.slot_mut(&idx).clone_from_slice(&v);
        }
        t
    }

    pub fn from_data(in_dims: Vec<usize>, out_dim: usize, data: Vec<Scalar>) -> Result<Self> {
        let n = in_dims.iter().product::<usize>() * out_dim;
        if data.len() != n {
            return Err(Error::Input(format!(
                "tensor data has {} entries, shape requires {n}",
                data.len()
            )));
        }
        Ok(Tensor { in_dims, out_dim, data })
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn arity(&self) -> usize {
        self.in_dims.len()
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Scalar] {
        &mut self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.in_dims.len());
        let mut o = 0;
        for (i, d) in idx.iter().zip(&self.in_dims) {
            debug_assert!(i < d);
            o = o * d + i;
        }
        o * self.out_dim
    }

    /// Output vector on basis inputs.
    pub fn slot(&self, idx: &[usize]) -> &[Scalar] {
        let o = self.offset(idx);
        &self.data[o..o + self.out_dim]
    }

    pub fn slot_mut(&mut self, idx: &[usize]) -> &mut [Scalar] {
        let o = self.offset(idx);
        let d = self.out_dim;
        &mut self.data[o..o + d]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn same_shape(&self, other: &Tensor) -> bool {
        self.in_dims == other.in_dims && self.out_dim == other.out_dim
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        assert!(self.same_shape(other), "tensor shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Tensor) {
        assert!(self.same_shape(other), "tensor shape mismatch");
        axpy(&mut self.data, c, &other.data);
    }

    pub fn scaled(&self, c: &Scalar) -> Tensor {
        Tensor {
            in_dims: self.in_dims.clone(),
            out_dim: self.out_dim,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Tensor {
        self.scaled(&-Scalar::one())
    }

    pub fn plus(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        t.add_assign(other);
        t
    }

    pub fn minus(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        t.add_scaled(&-Scalar::one(), other);
        t
    }

    /// Multilinear evaluation on arbitrary argument vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.in_dims.len(), "wrong number of arguments");
        let mut out = zero_vec(self.out_dim);
        let mut idx = vec![0usize; args.len()];
        self.eval_rec(args, 0, &Scalar::one(), &mut idx, &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[&[Scalar]],
        k: usize,
        coef: &Scalar,
        idx: &mut Vec<usize>,
        out: &mut [Scalar],
    ) {
        if k == args.len() {
            axpy(out, coef, self.slot(idx));
            return;
        }
        for (i, x) in args[k].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            idx[k] = i;
            let c = coef * x;
            self.eval_rec(args, k + 1, &c, idx, out);
        }
    }

    /// Applies a linear map (given as a `rows x cols` dense matrix acting on
    /// column vectors) to every output vector.
    pub fn map_output(&self, m: &[Vec<Scalar>]) -> Tensor {
        let rows = m.len();
        let mut t = Tensor::zeros(self.in_dims.clone(), rows);
        for idx in multi_indices(&self.in_dims) {
            let v = self.slot(&idx);
            let w: Vec<Scalar> =
                m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
            t.slot_mut(&idx).clone_from_slice(&w);
        }
        t
    }
}

/// Dense matrix-vector product, `m` given row-major.
pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(v).filter(|(_, b)| !b.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_column(m: &[Vec<Scalar>], j: usize) -> Vec<Scalar> {
    m.iter().map(|row| row[j].clone()).collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vec(cols);
            for (x, brow) in row.iter().zip(b) {
                axpy(&mut out, x, brow);
            }
            out
        })
        .collect()
}

pub fn mat_zero(rows: usize, cols: usize) -> Vec<Vec<Scalar>> {
    vec![zero_vec(cols); rows]
}

pub fn mat_identity(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| crate::scalar::unit_vec(n, i)).collect()
}

pub fn mat_add(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &[Vec<Scalar>], c: &Scalar) -> Vec<Vec<Scalar>> {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_order() {
        let v: Vec<_> = multi_indices(&[2, 3]).collect();
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], vec![0, 0]);
        assert_eq!(v[1], vec![0, 1]);
        assert_eq!(v[5], vec![1, 2]);
        assert_eq!(multi_indices(&[]).count(), 1);
        assert_eq!(multi_indices(&[2, 0]).count(), 0);
    }

    #[test]
    fn eval_is_multilinear() {
        let t = Tensor::from_fn(vec![2, 2], 1, |ix| vec![Scalar::from_int((ix[0] * 2 + ix[1]) as i64 + 1)]);
        let x = [Scalar::from_int(1), Scalar::from_int(2)];
        let y = [Scalar::from_int(3), Scalar::from_int(-1)];
        // 1*3*1 + 1*(-1)*2 + 2*3*3 + 2*(-1)*4
        assert_eq!(t.eval(&[&x, &y]), vec![Scalar::from_int(11)]);
    }
}
