//! Cochain complexes given by their differentials on coordinate vectors, and
//! cohomology dimensions computed from coboundary matrices.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, quotient_dim, rank, rank_dense, Matrix, Subspace};
use crate::scalar::{unit_vec, Scalar};

/// A cochain complex `C^0 -> C^1 -> ...` with cochains as coordinate vectors.
pub trait Complex: Sync {
    fn name(&self) -> &str;

    /// Dimension of the full coordinate space of `C^n`.
    fn dim(&self, n: usize) -> usize;

    /// `δ: C^n -> C^{n+1}` on coordinates.
    fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>>;

    /// A proper subspace of the degree-0 coordinate space when `C^0` is cut
    /// out by linear conditions.
    fn degree_zero_subspace(&self) -> Result<Option<Subspace>> {
        Ok(None)
    }
}

/// Matrix of `δ_n`, one column per coordinate of `C^n`.
pub fn coboundary_matrix(c: &dyn Complex, n: usize) -> Result<Matrix> {
    let (cols, rows) = (c.dim(n), c.dim(n + 1));
    let columns: Vec<Vec<Scalar>> =
        (0..cols).into_par_iter().map(|j| c.apply(n, &unit_vec(cols, j))).collect::<Result<_>>()?;
    for col in &columns {
        if col.len() != rows {
            return Err(Error::Logic(format!("{}: differential produced a vector of the wrong length", c.name())));
        }
    }
    Matrix::from_columns(rows, &columns)
}

/// Whether `δ_{n+1} ∘ δ_n` is the zero matrix.
pub fn squares_to_zero(c: &dyn Complex, n: usize) -> Result<bool> {
    let cols = c.dim(n);
    let zero: Vec<bool> = (0..cols)
        .into_par_iter()
        .map(|j| Ok(c.apply(n + 1, &c.apply(n, &unit_vec(cols, j))?)?.iter().all(Scalar::is_zero)))
        .collect::<Result<_>>()?;
    Ok(zero.into_iter().all(|z| z))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub cohomology_dim: usize,
}

fn cochain_space(c: &dyn Complex, n: usize) -> Result<Subspace> {
    if n == 0 {
        if let Some(s) = c.degree_zero_subspace()? {
            return Ok(s);
        }
    }
    Ok(Subspace::full(c.dim(n)))
}

/// Columns spanning `m(S)`.
fn image_of(m: &Matrix, s: &Subspace) -> Result<Vec<Vec<Scalar>>> {
    s.basis().iter().map(|v| m.mul_vec(v)).collect()
}

/// `H^n = Z^n / B^n`. Fails with a logic error when `δ∘δ ≠ 0`.
pub fn cohomology(c: &dyn Complex, n: usize) -> Result<CohomologyReport> {
    let space = cochain_space(c, n)?;
    let dn = coboundary_matrix(c, n)?;
    let cycles = if space.dim() == c.dim(n) {
        kernel_basis(&dn)
    } else {
        kernel_basis(&dn).intersect(&space)?
    };
    let boundaries = if n == 0 {
        Subspace::zero(c.dim(0))
    } else {
        let prev = coboundary_matrix(c, n - 1)?;
        if !dn.mul(&prev)?.is_zero() {
            return Err(Error::Logic(format!("{}: d∘d is nonzero in degree {}", c.name(), n - 1)));
        }
        let src = cochain_space(c, n - 1)?;
        Subspace::span(c.dim(n), &image_of(&prev, &src)?)?
    };
    let h = quotient_dim(&cycles, &boundaries)?;
    Ok(CohomologyReport {
        degree: n,
        dim_cocycles: cycles.dim(),
        dim_coboundaries: boundaries.dim(),
        cohomology_dim: h,
    })
}

/// The same dimensions from dense Gaussian elimination on `δ_n` and `δ_{n-1}`
/// restricted to the cochain spaces, without any subspace bookkeeping.
pub fn cohomology_dense(c: &dyn Complex, n: usize) -> Result<CohomologyReport> {
    let restricted = |k: usize| -> Result<Matrix> {
        let d = coboundary_matrix(c, k)?;
        let s = cochain_space(c, k)?;
        let cols = image_of(&d, &s)?;
        Matrix::from_columns(c.dim(k + 1), &cols)
    };
    let zn = cochain_space(c, n)?.dim() - rank_dense(&restricted(n)?);
    let bn = if n == 0 { 0 } else { rank_dense(&restricted(n - 1)?) };
    if bn > zn {
        return Err(Error::Logic(format!("{}: more coboundaries than cocycles in degree {n}", c.name())));
    }
    Ok(CohomologyReport { degree: n, dim_cocycles: zn, dim_coboundaries: bn, cohomology_dim: zn - bn })
}

/// Rank of `δ_n` on the cochain space.
pub fn differential_rank(c: &dyn Complex, n: usize) -> Result<usize> {
    let d = coboundary_matrix(c, n)?;
    let s = cochain_space(c, n)?;
    Ok(rank(&Matrix::from_columns(c.dim(n + 1), &image_of(&d, &s)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `k -> k^2 -> k` with `x -> (x, x)` and `(y, z) -> y - z`.
    struct Toy;

    impl Complex for Toy {
        fn name(&self) -> &str {
            "toy"
        }

        fn dim(&self, n: usize) -> usize {
            [1, 2, 1, 0][n.min(3)]
        }

        fn apply(&self, n: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
            Ok(match n {
                0 => vec![x[0].clone(), x[0].clone()],
                1 => vec![&x[0] - &x[1]],
                _ => vec![],
            })
        }
    }

    #[test]
    fn toy_cohomology() {
        let dims: Vec<usize> = (0..3).map(|n| cohomology(&Toy, n).unwrap().cohomology_dim).collect();
        assert_eq!(dims, vec![0, 0, 0]);
        for n in 0..3 {
            assert_eq!(cohomology(&Toy, n).unwrap(), cohomology_dense(&Toy, n).unwrap());
        }
        assert!(squares_to_zero(&Toy, 0).unwrap());
    }

    struct Broken;

    impl Complex for Broken {
        fn name(&self) -> &str {
            "broken"
        }

        fn dim(&self, _: usize) -> usize {
            1
        }

        fn apply(&self, _: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
            Ok(x.to_vec())
        }
    }

    #[test]
    fn nonzero_square_is_a_logic_error() {
        assert!(matches!(cohomology(&Broken, 1), Err(Error::Logic(_))));
        assert!(!squares_to_zero(&Broken, 0).unwrap());
    }
}
