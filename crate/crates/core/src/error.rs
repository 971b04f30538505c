use thiserror::Error;

use crate::scalar::Ring;

/// Errors raised by the dual arithmetic, linear algebra and graph routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },

    #[error("infinitesimal element has no inverse")]
    InfinitesimalNotInvertible,

    #[error("element is not a unit dual element")]
    NotUnit,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("standard part of the matrix is singular")]
    SingularStandardPart,

    #[error("matrix is not Hermitian (entry ({row}, {col}))")]
    NotHermitian { row: usize, col: usize },

    #[error("size {n} exceeds the cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("gain on edge ({u}, {v}) is not a unit dual element")]
    NotUnitGain { u: usize, v: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("self loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not a walk: vertices {0} and {1} are not adjacent")]
    NotAWalk(usize, usize),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("unknown ring `{0}`")]
    BadRing(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
