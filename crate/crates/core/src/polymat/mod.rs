//! Polynomial and Laurent matrices in the delay variable z.

mod general;
mod laurent;
mod structured;

use thiserror::Error;

use crate::field::{Fe, Field};
use crate::matrix::{Matrix, MatrixError};
use crate::poly::Poly;

pub use general::{hermite_form, invariant_factors, polynomial_kernel, right_invertible_general, HermiteForm};
pub use laurent::{poly_mul, LaurentMatrix};
pub use structured::{check_matrix, correction_order, right_inverse_structured};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyMatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structured construction does not apply: {0}")]
    ConditionNotMet(String),
    #[error("generator does not have full row rank")]
    RankDeficient,
    #[error("certificate failed verification: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `Σ_k blocks[k] z^k`, trailing zero blocks trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    blocks: Vec<Matrix>,
}

impl PolyMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, mut blocks: Vec<Matrix>) -> Result<PolyMatrix, PolyMatError> {
        if blocks.iter().any(|b| b.rows() != rows || b.cols() != cols || b.field() != field) {
            return Err(PolyMatError::DimensionMismatch(format!("blocks must all be {rows}x{cols}")));
        }
        while blocks.last().is_some_and(|b| b.is_zero()) {
            blocks.pop();
        }
        Ok(PolyMatrix { field: field.clone(), rows, cols, blocks })
    }

    /// From a nonempty coefficient list (dimensions taken from the first block).
    pub fn from_blocks(blocks: Vec<Matrix>) -> Result<PolyMatrix, PolyMatError> {
        let first = blocks.first().ok_or_else(|| PolyMatError::DimensionMismatch("no blocks".into()))?;
        let (f, r, c) = (first.field().clone(), first.rows(), first.cols());
        PolyMatrix::new(&f, r, c, blocks)
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { field: field.clone(), rows, cols, blocks: Vec::new() }
    }

    pub fn constant(m: &Matrix) -> PolyMatrix {
        PolyMatrix::monomial(m, 0)
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        PolyMatrix::constant(&Matrix::identity(field, n))
    }

    /// `m · z^k`
    pub fn monomial(m: &Matrix, k: usize) -> PolyMatrix {
        let mut blocks = vec![Matrix::zeros(m.field(), m.rows(), m.cols()); k];
        blocks.push(m.clone());
        PolyMatrix::new(m.field(), m.rows(), m.cols(), blocks).expect("consistent blocks")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.blocks.len().checked_sub(1)
    }

    /// Coefficient of z^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Matrix {
        self.blocks.get(k).cloned().unwrap_or_else(|| Matrix::zeros(&self.field, self.rows, self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].is_identity()
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyMatError> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyMatError> {
        self.combine(other, |a, b| a.sub(b))
    }

    fn combine(
        &self,
        other: &PolyMatrix,
        op: impl Fn(&Matrix, &Matrix) -> Result<Matrix, MatrixError>,
    ) -> Result<PolyMatrix, PolyMatError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(PolyMatError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let len = self.blocks.len().max(other.blocks.len());
        let blocks = (0..len).map(|k| op(&self.coeff(k), &other.coeff(k))).collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::new(&self.field, self.rows, self.cols, blocks)
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix { blocks: self.blocks.iter().map(|b| b.neg()).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: Fe) -> PolyMatrix {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        PolyMatrix::new(&self.field, self.rows, self.cols, blocks).expect("consistent blocks")
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> PolyMatrix {
        if self.is_zero() {
            return self.clone();
        }
        let mut blocks = vec![Matrix::zeros(&self.field, self.rows, self.cols); k];
        blocks.extend(self.blocks.iter().cloned());
        PolyMatrix { blocks, ..self.clone() }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyMatError> {
        if self.cols != other.rows {
            return Err(PolyMatError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(PolyMatrix::zero(&self.field, self.rows, other.cols));
        }
        let mut blocks = vec![Matrix::zeros(&self.field, self.rows, other.cols); self.blocks.len() + other.blocks.len() - 1];
        for (i, a) in self.blocks.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.blocks.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                blocks[i + j] = blocks[i + j].add(&a.mul(b)?)?;
            }
        }
        PolyMatrix::new(&self.field, self.rows, other.cols, blocks)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            blocks: self.blocks.iter().map(|b| b.transpose()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> PolyMatrix {
        let blocks = self.blocks.iter().map(|b| b.select_rows(idx)).collect();
        PolyMatrix::new(&self.field, idx.len(), self.cols, blocks).expect("consistent blocks")
    }

    pub fn select_cols(&self, idx: &[usize]) -> PolyMatrix {
        let blocks = self.blocks.iter().map(|b| b.select_cols(idx)).collect();
        PolyMatrix::new(&self.field, self.rows, idx.len(), blocks).expect("consistent blocks")
    }

    pub fn hstack(parts: &[&PolyMatrix]) -> Result<PolyMatrix, PolyMatError> {
        let first = parts.first().ok_or_else(|| PolyMatError::DimensionMismatch("empty stack".into()))?;
        let len = parts.iter().map(|p| p.blocks.len()).max().unwrap_or(0);
        let cols = parts.iter().map(|p| p.cols).sum();
        let blocks = (0..len)
            .map(|k| {
                let cs: Vec<Matrix> = parts.iter().map(|p| p.coeff(k)).collect();
                Matrix::hstack(&cs.iter().collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::new(&first.field, first.rows, cols, blocks)
    }

    pub fn vstack(parts: &[&PolyMatrix]) -> Result<PolyMatrix, PolyMatError> {
        let first = parts.first().ok_or_else(|| PolyMatError::DimensionMismatch("empty stack".into()))?;
        let len = parts.iter().map(|p| p.blocks.len()).max().unwrap_or(0);
        let rows = parts.iter().map(|p| p.rows).sum();
        let blocks = (0..len)
            .map(|k| {
                let cs: Vec<Matrix> = parts.iter().map(|p| p.coeff(k)).collect();
                Matrix::vstack(&cs.iter().collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::new(&first.field, rows, first.cols, blocks)
    }

    /// Entry-wise view as a matrix of polynomials.
    pub fn entries(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Poly::from_coeffs(self.blocks.iter().map(|b| b.get(i, j)).collect()))
                    .collect()
            })
            .collect()
    }

    pub fn from_entries(field: &Field, rows: usize, cols: usize, e: &[Vec<Poly>]) -> PolyMatrix {
        let len = e.iter().flatten().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let blocks = (0..len).map(|k| Matrix::from_fn(field, rows, cols, |i, j| e[i][j].coeff(k))).collect();
        PolyMatrix::new(field, rows, cols, blocks).expect("consistent blocks")
    }

    /// Row-vector polynomial times this matrix: `u(z) · M(z)`.
    pub fn row_mul(&self, u: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        if u.is_empty() || self.blocks.is_empty() {
            return Vec::new();
        }
        let f = &self.field;
        let mut out = vec![vec![Fe::ZERO; self.cols]; u.len() + self.blocks.len() - 1];
        for (i, ui) in u.iter().enumerate() {
            for (k, b) in self.blocks.iter().enumerate() {
                let v = b.vec_mul(ui);
                for (o, x) in out[i + k].iter_mut().zip(v) {
                    *o = f.add(*o, x);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_with_identity_and_trimming() {
        let f = Field::prime(5).unwrap();
        let a = PolyMatrix::from_blocks(vec![
            Matrix::from_ints(&f, &[&[1, 2], &[0, 1]]),
            Matrix::from_ints(&f, &[&[3, 0], &[4, 4]]),
            Matrix::zeros(&f, 2, 2),
        ])
        .unwrap();
        assert_eq!(a.degree(), Some(1));
        assert_eq!(a.mul(&PolyMatrix::identity(&f, 2)).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn entries_round_trip() {
        let f = Field::prime(3).unwrap();
        let a = PolyMatrix::from_blocks(vec![
            Matrix::from_ints(&f, &[&[1, 0, 2]]),
            Matrix::from_ints(&f, &[&[0, 0, 1]]),
        ])
        .unwrap();
        let e = a.entries();
        assert_eq!(e[0][2].coeffs(), &[f.integer(2), f.integer(1)]);
        assert_eq!(PolyMatrix::from_entries(&f, 1, 3, &e), a);
    }
}
