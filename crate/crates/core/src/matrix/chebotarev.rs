//! Exhaustive check that every square submatrix is nonsingular.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{det_in_place, Matrix, MatrixError};
use crate::field::Fe;

/// Largest dimension accepted by default; the check costs C(2n, n) determinants.
pub const CHEBOTAREV_GUARD: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChebotarevReport {
    pub holds: bool,
    /// First singular submatrix in (size, rows, cols) lexicographic order.
    pub failure: Option<(Vec<usize>, Vec<usize>)>,
    /// Number of minors evaluated; only meaningful when the property holds.
    pub minors: u64,
}

pub fn chebotarev_check(m: &Matrix, guard: usize) -> Result<bool, MatrixError> {
    chebotarev_report(m, guard).map(|r| r.holds)
}

pub fn chebotarev_report(m: &Matrix, guard: usize) -> Result<ChebotarevReport, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n > guard {
        return Err(MatrixError::GuardExceeded { what: "chebotarev dimension", needed: n as u128, guard: guard as u128 });
    }
    let f = m.field();
    let mut minors = 0u64;
    for k in 1..=n {
        let row_sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let col_sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let failure = row_sets.par_iter().find_map_first(|rows| {
            let mut buf = vec![Fe::ZERO; k * k];
            col_sets.iter().find_map(|cols| {
                for (a, &i) in rows.iter().enumerate() {
                    for (b, &j) in cols.iter().enumerate() {
                        buf[a * k + b] = m.get(i, j);
                    }
                }
                det_in_place(f, &mut buf, k).is_zero().then(|| (rows.clone(), cols.clone()))
            })
        });
        if let Some(fail) = failure {
            return Ok(ChebotarevReport { holds: false, failure: Some(fail), minors: 0 });
        }
        minors += (row_sets.len() * col_sets.len()) as u64;
    }
    Ok(ChebotarevReport { holds: true, failure: None, minors })
}
