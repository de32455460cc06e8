//! Exact computations with (compatible) O-operators, their cohomology
//! complexes, deformations, and the related dendriform structures.
//!
//! All arithmetic is over the rationals; structures are given by structure
//! constants in fixed bases.

pub mod algebra;
pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod deformation;
pub mod dendriform;
pub mod error;
pub mod linalg;
pub mod linfty;
pub mod mixed;
pub mod operators;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;
