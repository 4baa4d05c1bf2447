use serde::{Deserialize, Serialize};

use super::{codeword_weight, encode};
use crate::design::ConvCode;
use crate::field::Fe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Trellis,
    BoundedSearch,
    Algebraic,
}

/// Which argument produced the lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LowerSource {
    /// Exhaustive state-graph search.
    Trellis,
    /// First block lies in the E_0 code, last block in the E_μ code.
    ComponentSum { first: usize, last: usize },
    /// Rate-1/n code using every row of a Chebotarev unit once: n².
    FullRow,
    /// Per-block mds bound summed over input support patterns.
    SupportPattern,
    /// Complete bounded search over all inputs up to the stated degree.
    CompleteSearch { max_degree: usize },
    /// Any nonzero codeword has weight at least one.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperSource {
    Trellis,
    Witness,
    Gsb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub lower: usize,
    pub lower_source: LowerSource,
    pub upper: usize,
    pub upper_source: UpperSource,
    /// Input polynomial attaining `upper`, one row of packed element indices per power of z.
    pub witness: Option<Vec<Vec<u32>>>,
    pub exact: bool,
    pub method: DistanceMethod,
    /// Some bound rests on a Chebotarev property that was assumed, not checked.
    pub assumed: bool,
    /// States or search nodes visited.
    pub work: u64,
}

impl DistanceReport {
    pub fn exact_value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }

    /// Re-encode the witness and compare its weight with `upper`.
    pub fn verify_witness(&self, code: &ConvCode) -> bool {
        let Some(w) = &self.witness else {
            return self.upper_source != UpperSource::Witness && self.upper_source != UpperSource::Trellis;
        };
        let f = code.field();
        let input: Option<Vec<Vec<Fe>>> =
            w.iter().map(|row| row.iter().map(|&x| f.element(x as u64)).collect()).collect();
        let Some(input) = input else {
            return false;
        };
        if input.iter().all(|b| b.iter().all(|x| x.is_zero())) || input.iter().any(|b| b.len() != code.r) {
            return false;
        }
        codeword_weight(&encode(code, &input)) == self.upper
    }

    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper && (!self.exact || self.lower == self.upper)
    }
}

pub(crate) fn pack_input(input: &[Vec<Fe>]) -> Vec<Vec<u32>> {
    input.iter().map(|b| b.iter().map(|x| x.index()).collect()).collect()
}
