//! Dense dual matrices and their spectral routines.

pub mod adjoint;
mod eigen;
pub mod jacobi;
mod matrix;
mod mdet;

pub use eigen::{clusters, hermitian_eigendecomposition, hermitian_eigenvalues, EigenOptions, EigenPair, CLUSTER_TOL};
pub use matrix::{DualMatrix, DualVector};
pub use mdet::{canonical_cycles, moore_determinant, MDET_CAP};
