//! Dual-number, dual-complex and dual-quaternion arithmetic with spectral
//! tools for dual unit gain graphs.

pub mod char_poly;
pub mod checks;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod spectra;
pub mod transcendental;

pub use error::{Error, Result};
pub use scalar::{Dual, DualNumber, DualScalar, Element, Quaternion, Ring};

/// Default absolute tolerance for comparisons against zero.
pub const DEFAULT_TOL: f64 = 1e-12;
