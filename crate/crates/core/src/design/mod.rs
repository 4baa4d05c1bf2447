//! Unit schemes, row and block selections, generator assembly and the
//! generalized Singleton bound.

mod auto;
mod code;
mod scheme;
mod unit;

use thiserror::Error;

use crate::field::FieldError;
use crate::matrix::MatrixError;
use crate::polymat::PolyMatError;

pub use auto::auto_design;
pub use code::{build_generator, row_degrees, structurally_noncatastrophic, Certificates, ConvCode, InverseMethod};
pub use scheme::{block_scheme, classify_selection, Selection, SelectionScheme};
pub use unit::{ChebotarevStatus, UnitProvenance, UnitScheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("U·V is not the identity")]
    NotUnit,
    #[error("index {index} out of range for size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rate {r}/{n} is infeasible")]
    InfeasibleRate { r: usize, n: usize },
    #[error("unit scheme has no block partition")]
    NoBlockPartition,
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("catastrophic or degenerate generator: {0}")]
    Catastrophic(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    PolyMat(PolyMatError),
}

/// Generalized Singleton bound `(n - r)(⌊δ/r⌋ + 1) + δ + 1`.
pub fn gsb(n: usize, r: usize, delta: usize) -> usize {
    assert!(r >= 1 && r < n, "gsb needs 1 <= r < n");
    (n - r) * (delta / r + 1) + delta + 1
}
