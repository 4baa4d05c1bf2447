use serde::{Deserialize, Serialize};

use super::bounds::{component_bound, pattern_lower_bound};
use super::report::pack_input;
use super::search::bounded_search;
use super::{DistanceError, DistanceOptions, LowerSource};
use crate::design::{ConvCode, UnitScheme};

/// Lightest codeword among inputs with at least `t` nonzero coefficient blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportProfile {
    pub t: usize,
    pub lower: usize,
    pub lower_source: LowerSource,
    /// Lightest word the search found, if any.
    pub upper: Option<usize>,
    pub witness: Option<Vec<Vec<u32>>>,
    /// The search covered every input within its degree and support limits.
    pub complete: bool,
    pub max_degree: usize,
}

impl SupportProfile {
    pub fn exact(&self) -> Option<usize> {
        self.upper.filter(|&u| u == self.lower)
    }
}

pub fn support_profile(
    code: &ConvCode,
    unit: Option<&UnitScheme>,
    t: usize,
    opts: &DistanceOptions,
) -> Result<SupportProfile, DistanceError> {
    let first = component_bound(code, unit, 0, opts.component_guard).0;
    let last = if code.mu == 0 { 0 } else { component_bound(code, unit, code.mu, opts.component_guard).0 };
    let (mut lower, mut lower_source) = (first + last, LowerSource::ComponentSum { first, last });
    if let Some(p) = pattern_lower_bound(code, unit, t) {
        if p > lower {
            lower = p;
            lower_source = LowerSource::SupportPattern;
        }
    }
    let out = bounded_search(code, opts, t, usize::MAX)?;
    let (upper, witness) = match out.best {
        Some((w, input)) => (Some(w), Some(pack_input(&input))),
        None => (None, None),
    };
    Ok(SupportProfile { t, lower, lower_source, upper, witness, complete: out.complete, max_degree: out.max_degree })
}
