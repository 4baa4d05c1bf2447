//! Minimum Hamming distance of a linear block code by enumeration.

use rayon::prelude::*;

use super::{weight, Matrix, MatrixError};
use crate::field::Fe;

/// Default cap on q^r information words.
pub const LINEAR_DISTANCE_GUARD: u128 = 10_000_000;

pub fn linear_min_distance(g: &Matrix, guard: u128) -> Result<usize, MatrixError> {
    min_weight_word(g, guard).map(|(w, _)| w)
}

/// Minimum weight over nonzero codewords `uG`, and an information word `u` attaining it.
///
/// Only words whose first nonzero coordinate is 1 are enumerated; weight is
/// invariant under scaling so nothing is lost.
pub fn min_weight_word(g: &Matrix, guard: u128) -> Result<(usize, Vec<Fe>), MatrixError> {
    let f = g.field();
    let r = g.rows();
    let q = f.cardinality() as u128;
    let needed = q.checked_pow(r as u32).unwrap_or(u128::MAX);
    if needed > guard {
        return Err(MatrixError::GuardExceeded { what: "information words", needed, guard });
    }
    let rank = g.rank();
    if rank < r {
        return Err(MatrixError::RankDeficient { rank, rows: r });
    }
    let n = g.cols();
    let elements: Vec<Fe> = f.elements().collect();
    // multiples[j][c] = c * row_j
    let multiples: Vec<Vec<Vec<Fe>>> = (0..r)
        .map(|j| elements.iter().map(|&c| g.row(j).iter().map(|&x| f.mul(c, x)).collect()).collect())
        .collect();

    // One task per (leading position, next coefficient).
    let mut tasks = Vec::new();
    for lead in 0..r {
        if lead + 1 < r {
            tasks.extend(elements.iter().map(|&c| (lead, Some(c))));
        } else {
            tasks.push((lead, None));
        }
    }
    let best = tasks
        .par_iter()
        .map(|&(lead, next)| {
            let mut word = vec![Fe::ZERO; r];
            word[lead] = Fe::ONE;
            let mut acc = g.row(lead).to_vec();
            let mut start = lead + 1;
            if let Some(c) = next {
                word[start] = c;
                for (a, &m) in acc.iter_mut().zip(&multiples[start][c.index() as usize]) {
                    *a = f.add(*a, m);
                }
                start += 1;
            }
            let mut best = (usize::MAX, Vec::new());
            let mut stack = vec![vec![Fe::ZERO; n]; r + 1];
            search(f, &multiples, &elements, start, &mut acc, &mut word, &mut stack, &mut best);
            best
        })
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .expect("at least one information word");
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn search(
    f: &crate::field::Field,
    multiples: &[Vec<Vec<Fe>>],
    elements: &[Fe],
    depth: usize,
    acc: &mut Vec<Fe>,
    word: &mut Vec<Fe>,
    stack: &mut [Vec<Fe>],
    best: &mut (usize, Vec<Fe>),
) {
    if depth == multiples.len() {
        let w = weight(acc);
        if w < best.0 {
            *best = (w, word.clone());
        }
        return;
    }
    stack[depth].clone_from(acc);
    for &c in elements {
        word[depth] = c;
        for ((a, &s), &m) in acc.iter_mut().zip(&stack[depth]).zip(&multiples[depth][c.index() as usize]) {
            *a = f.add(s, m);
        }
        search(f, multiples, elements, depth + 1, acc, word, stack, best);
    }
    word[depth] = Fe::ZERO;
    acc.clone_from(&stack[depth]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::fourier_matrix;

    /// Plain enumeration of every nonzero information word.
    fn brute(g: &Matrix) -> usize {
        let f = g.field();
        let q = f.cardinality();
        let r = g.rows();
        let mut best = usize::MAX;
        for code in 1..q.pow(r as u32) {
            let mut c = code;
            let u: Vec<Fe> = (0..r)
                .map(|_| {
                    let d = c % q;
                    c /= q;
                    f.element(d).unwrap()
                })
                .collect();
            best = best.min(weight(&g.vec_mul(&u)));
        }
        best
    }

    #[test]
    fn mds_rows_of_f5() {
        let f = Field::prime(11).unwrap();
        let (u, _) = fourier_matrix(&f, 5).unwrap();
        assert_eq!(linear_min_distance(&u.select_rows(&[0, 1]), LINEAR_DISTANCE_GUARD).unwrap(), 4);
        assert_eq!(linear_min_distance(&u.select_rows(&[1]), LINEAR_DISTANCE_GUARD).unwrap(), 5);
        assert_eq!(linear_min_distance(&Matrix::identity(&f, 2), LINEAR_DISTANCE_GUARD).unwrap(), 1);
    }

    #[test]
    fn agrees_with_plain_enumeration() {
        let f = Field::prime(3).unwrap();
        let g = Matrix::from_ints(&f, &[&[1, 0, 2, 1, 0, 1], &[0, 1, 1, 2, 0, 0], &[1, 1, 0, 0, 1, 2]]);
        let (w, u) = min_weight_word(&g, LINEAR_DISTANCE_GUARD).unwrap();
        assert_eq!(w, brute(&g));
        assert_eq!(weight(&g.vec_mul(&u)), w);
    }

    #[test]
    fn guard_and_rank() {
        let f = Field::prime(23).unwrap();
        let g = Matrix::identity(&f, 6);
        assert!(matches!(linear_min_distance(&g, LINEAR_DISTANCE_GUARD), Err(MatrixError::GuardExceeded { .. })));
        let dup = Matrix::from_ints(&f, &[&[1, 2, 3], &[2, 4, 6]]);
        assert!(matches!(linear_min_distance(&dup, LINEAR_DISTANCE_GUARD), Err(MatrixError::RankDeficient { .. })));
    }
}
