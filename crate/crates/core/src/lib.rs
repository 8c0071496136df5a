//! Computations in `RO(C2)`-graded homology with `F2` coefficients: Hopf
//! rings of equivariant spaces, bar and twisted bar spectral sequences, and
//! basis bookkeeping for fixed points.

pub mod barss;
pub mod bases;
pub mod coeffs;
pub mod error;
pub mod hopf;
pub mod twistss;

pub use error::{Error, Result};
