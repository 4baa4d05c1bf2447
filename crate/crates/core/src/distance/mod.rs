//! Free distance: exact shortest-cycle search on the encoder state graph,
//! bounded input search for witnesses, and algebraic lower bounds.

mod bounds;
mod profile;
mod report;
mod search;
mod trellis;

use thiserror::Error;

use crate::design::{ConvCode, DesignError};
use crate::field::{Fe, Field};
use crate::matrix::{weight, MatrixError};

pub use bounds::{component_distance, free_distance, free_distance_bounds, pattern_lower_bound};
pub use profile::{support_profile, SupportProfile};
pub use report::{DistanceMethod, DistanceReport, LowerSource, UpperSource};
pub use search::{bounded_search, SearchOutcome};
pub use trellis::free_distance_exact;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("{what}: {needed} exceeds guard {guard}")]
    GuardExceeded { what: &'static str, needed: u128, guard: u128 },
    #[error("encoder has a zero-weight cycle away from the zero state")]
    Catastrophic,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Limits for the distance computations. Every field is a knob on the CLI.
#[derive(Debug, Clone, Copy)]
pub struct DistanceOptions {
    /// Maximum number of trellis states q^{r·μ}.
    pub state_guard: u64,
    /// Maximum number of trellis edges q^{r·(μ+1)}.
    pub edge_budget: u64,
    /// Inputs of degree up to μ + search_depth are searched.
    pub search_depth: usize,
    /// Overrides `μ + search_depth` when set.
    pub max_degree: Option<usize>,
    /// Maximum number of nonzero input blocks in the bounded search.
    pub support_cap: usize,
    /// Search nodes visited before giving up on completeness.
    pub node_budget: u64,
    /// Enumeration guard for block-code distances of E_0 and E_μ.
    pub component_guard: u128,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            state_guard: 1 << 22,
            edge_budget: 1 << 28,
            search_depth: 4,
            max_degree: None,
            support_cap: 3,
            node_budget: 20_000_000,
            component_guard: crate::matrix::LINEAR_DISTANCE_GUARD,
        }
    }
}

/// Codeword blocks of `u(z) G(z)`.
pub fn encode(code: &ConvCode, input: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    code.generator().row_mul(input)
}

/// Total Hamming weight of a polynomial vector.
pub fn codeword_weight(blocks: &[Vec<Fe>]) -> usize {
    blocks.iter().map(|b| weight(b)).sum()
}

/// Digits of a packed input symbol `a = Σ c_j q^j` as an r-vector.
pub(crate) fn unpack_symbol(field: &Field, mut a: u64, r: usize) -> Vec<Fe> {
    let q = field.cardinality();
    (0..r)
        .map(|_| {
            let d = a % q;
            a /= q;
            field.element(d).expect("digit below q")
        })
        .collect()
}
