use super::{PolyMatError, PolyMatrix};
use crate::field::Field;
use crate::matrix::Matrix;

/// `z^offset · Σ_k blocks[k] z^k`, with both the lowest and highest block nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    offset: i64,
    body: PolyMatrix,
}

impl LaurentMatrix {
    pub fn new(offset: i64, body: PolyMatrix) -> LaurentMatrix {
        let lead = body.blocks.iter().take_while(|b| b.is_zero()).count();
        if lead == body.blocks.len() {
            return LaurentMatrix { offset: 0, body: PolyMatrix::zero(&body.field, body.rows, body.cols) };
        }
        let blocks = body.blocks[lead..].to_vec();
        LaurentMatrix { offset: offset + lead as i64, body: PolyMatrix { blocks, ..body } }
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> LaurentMatrix {
        LaurentMatrix { offset: 0, body: PolyMatrix::zero(field, rows, cols) }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn blocks(&self) -> &[Matrix] {
        self.body.blocks()
    }

    pub fn rows(&self) -> usize {
        self.body.rows
    }

    pub fn cols(&self) -> usize {
        self.body.cols
    }

    pub fn field(&self) -> &Field {
        &self.body.field
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Highest exponent present (`None` for zero).
    pub fn top(&self) -> Option<i64> {
        self.body.degree().map(|d| self.offset + d as i64)
    }

    /// Coefficient of z^k.
    pub fn coeff(&self, k: i64) -> Matrix {
        if k < self.offset {
            return Matrix::zeros(self.field(), self.rows(), self.cols());
        }
        self.body.coeff((k - self.offset) as usize)
    }

    pub fn shift(&self, k: i64) -> LaurentMatrix {
        if self.is_zero() {
            return self.clone();
        }
        LaurentMatrix { offset: self.offset + k, body: self.body.clone() }
    }

    /// The polynomial matrix, when no negative powers occur.
    pub fn to_poly(&self) -> Option<PolyMatrix> {
        if self.is_zero() {
            return Some(self.body.clone());
        }
        (self.offset >= 0).then(|| self.body.shift(self.offset as usize))
    }

    /// `M(z^{-1})^T`
    pub fn reversed_transpose(&self) -> LaurentMatrix {
        let Some(top) = self.top() else {
            return LaurentMatrix::zero(self.field(), self.cols(), self.rows());
        };
        let blocks: Vec<Matrix> = self.body.blocks.iter().rev().map(|b| b.transpose()).collect();
        let body = PolyMatrix::new(self.field(), self.cols(), self.rows(), blocks).expect("consistent blocks");
        LaurentMatrix::new(-top, body)
    }

    fn aligned(&self, other: &LaurentMatrix) -> (i64, PolyMatrix, PolyMatrix) {
        let lo = self.offset.min(other.offset);
        (lo, self.body.shift((self.offset - lo) as usize), other.body.shift((other.offset - lo) as usize))
    }

    pub fn add(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, PolyMatError> {
        let (lo, a, b) = self.aligned(other);
        Ok(LaurentMatrix::new(lo, a.add(&b)?))
    }

    pub fn sub(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, PolyMatError> {
        let (lo, a, b) = self.aligned(other);
        Ok(LaurentMatrix::new(lo, a.sub(&b)?))
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, PolyMatError> {
        Ok(LaurentMatrix::new(self.offset + other.offset, self.body.mul(&other.body)?))
    }
}

impl From<PolyMatrix> for LaurentMatrix {
    fn from(p: PolyMatrix) -> LaurentMatrix {
        LaurentMatrix::new(0, p)
    }
}

impl From<&PolyMatrix> for LaurentMatrix {
    fn from(p: &PolyMatrix) -> LaurentMatrix {
        LaurentMatrix::new(0, p.clone())
    }
}

/// Product of two polynomial or Laurent matrices.
pub fn poly_mul(a: impl Into<LaurentMatrix>, b: impl Into<LaurentMatrix>) -> Result<LaurentMatrix, PolyMatError> {
    a.into().mul(&b.into())
}
