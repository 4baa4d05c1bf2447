//! Dense matrices over a [`Field`].

mod chebotarev;
pub mod gf2;
mod lindist;
pub mod text;

use std::fmt;

use thiserror::Error;

use crate::field::{root_of_unity, Fe, Field, FieldError};

pub use chebotarev::{chebotarev_check, chebotarev_report, ChebotarevReport, CHEBOTAREV_GUARD};
pub use lindist::{linear_min_distance, min_weight_word, LINEAR_DISTANCE_GUARD};

/// GF(2) products and inverses switch to the bit-packed kernel at this size.
const GF2_PACKED_FROM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{what}: {needed} exceeds guard {guard}")]
    GuardExceeded { what: &'static str, needed: u128, guard: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "data length");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Result<Matrix, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Fe::ONE } else { Fe::ZERO }))
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&Field, Fe, Fe) -> Fe) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(&self.field, a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field.is_gf2() && self.rows.max(self.cols).max(other.cols) >= GF2_PACKED_FROM {
            let a = gf2::BitMatrix::from_matrix(self);
            let b = gf2::BitMatrix::from_matrix(other);
            return Ok(a.mul(&b).to_matrix(&self.field));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = out.row_mut(i);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = f.mul_add(a, b, *o);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = f.mul_add(a, b, *o);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// `h x w` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        Matrix::from_fn(&self.field, h, w, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix, MatrixError> {
        let first = parts.first().ok_or_else(|| MatrixError::DimensionMismatch("empty stack".into()))?;
        if parts.iter().any(|p| p.rows != first.rows || p.field != first.field) {
            return Err(MatrixError::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(&first.field, first.rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix, MatrixError> {
        let first = parts.first().ok_or_else(|| MatrixError::DimensionMismatch("empty stack".into()))?;
        if parts.iter().any(|p| p.cols != first.cols || p.field != first.field) {
            return Err(MatrixError::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = Vec::new();
        for p in parts {
            data.extend_from_slice(&p.data);
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        Ok(Matrix { field: first.field.clone(), rows, cols: first.cols, data })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for x in m.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for (x, &pr) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, pr));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn rank(&self) -> usize {
        if self.field.is_gf2() && self.rows.max(self.cols) >= GF2_PACKED_FROM {
            return gf2::BitMatrix::from_matrix(self).rank();
        }
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Fe, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut buf = self.data.clone();
        Ok(det_in_place(&self.field, &mut buf, self.rows))
    }

    pub fn invert(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.field.is_gf2() && self.rows >= GF2_PACKED_FROM {
            return gf2::BitMatrix::from_matrix(self)
                .invert()
                .map(|m| m.to_matrix(&self.field))
                .ok_or(MatrixError::Singular);
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(&self.field, n)])?;
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        Ok(red.block(0, n, n, n))
    }

    /// Basis of the right null space, one column per basis vector.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, Fe::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(red.get(r, fc)));
            }
        }
        k
    }
}

/// Determinant of the `k x k` row-major matrix in `buf` (destroyed).
pub(crate) fn det_in_place(f: &Field, buf: &mut [Fe], k: usize) -> Fe {
    let mut det = Fe::ONE;
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !buf[i * k + c].is_zero()) else {
            return Fe::ZERO;
        };
        if p != c {
            for j in c..k {
                buf.swap(p * k + j, c * k + j);
            }
            det = f.neg(det);
        }
        let piv = buf[c * k + c];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for i in c + 1..k {
            let factor = f.mul(buf[i * k + c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c + 1..k {
                buf[i * k + j] = f.sub(buf[i * k + j], f.mul(factor, buf[c * k + j]));
            }
        }
    }
    det
}

/// Hamming weight of a vector.
pub fn weight(v: &[Fe]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// The Fourier pair: `U[i][j] = w^{ij}` and `V = n^{-1} U*` with `V[i][j] = n^{-1} w^{-ij}`.
pub fn fourier_matrix(field: &Field, n: usize) -> Result<(Matrix, Matrix), MatrixError> {
    let w = root_of_unity(field, n as u64)?;
    let winv = field.inv(w).expect("root of unity is nonzero");
    let ninv = field.inv(field.integer(n as u64)).ok_or(MatrixError::Singular)?;
    let nn = n as u64;
    let u = Matrix::from_fn(field, n, n, |i, j| field.pow(w, (i as u64 * j as u64) % nn));
    let v = Matrix::from_fn(field, n, n, |i, j| field.mul(ninv, field.pow(winv, (i as u64 * j as u64) % nn)));
    Ok((u, v))
}

/// `U · U^T = I`.
pub fn is_orthogonal(u: &Matrix) -> bool {
    u.is_square() && u.mul(&u.transpose()).is_ok_and(|p| p.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_f5_over_gf11() {
        let f = Field::prime(11).unwrap();
        let (u, v) = fourier_matrix(&f, 5).unwrap();
        let ints = |row: &[Fe]| row.iter().map(|x| x.index()).collect::<Vec<_>>();
        assert_eq!(ints(u.row(1)), vec![1, 4, 5, 9, 3]);
        assert_eq!(ints(u.row(2)), vec![1, 5, 3, 4, 9]);
        assert!(u.mul(&v).unwrap().is_identity());
        assert_eq!(u.invert().unwrap(), v);
    }

    #[test]
    fn fourier_f3_over_gf7() {
        let f = Field::prime(7).unwrap();
        let (u, _) = fourier_matrix(&f, 3).unwrap();
        assert_eq!(u, Matrix::from_ints(&f, &[&[1, 1, 1], &[1, 2, 4], &[1, 4, 2]]));
    }

    #[test]
    fn fourier_over_extension_field() {
        let f = crate::field::make_field(2, 4, Some(vec![1, 1, 1, 1, 1])).unwrap();
        let (u, v) = fourier_matrix(&f, 5).unwrap();
        assert!(u.mul(&v).unwrap().is_identity());
        assert!(fourier_matrix(&f, 7).is_err());
    }

    #[test]
    fn invert_identity_and_singular() {
        let f = Field::prime(5).unwrap();
        let i4 = Matrix::identity(&f, 4);
        assert_eq!(i4.invert().unwrap(), i4);
        let s = Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.invert(), Err(MatrixError::Singular));
        assert_eq!(s.determinant().unwrap(), Fe::ZERO);
    }

    #[test]
    fn determinant_by_cofactor_expansion() {
        let f = Field::prime(13).unwrap();
        let m = Matrix::from_ints(&f, &[&[2, 7, 1], &[3, 0, 5], &[11, 4, 9]]);
        // 2(0*9-5*4) - 7(3*9-5*11) + 1(3*4-0*11) = -40 + 196 + 12 = 168
        assert_eq!(m.determinant().unwrap(), f.from_int(168));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2, 3, 4], &[2, 4, 6, 1]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 4 - m.rank());
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn orthogonality() {
        let f = Field::prime(2).unwrap();
        let u = Matrix::from_ints(&f, &[&[0, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 0, 1], &[1, 1, 1, 0]]);
        assert!(is_orthogonal(&u));
        let f11 = Field::prime(11).unwrap();
        assert!(!is_orthogonal(&fourier_matrix(&f11, 5).unwrap().0));
    }

    #[test]
    fn packed_and_plain_gf2_agree() {
        use rand::{Rng, SeedableRng};
        let f = Field::prime(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = Matrix::from_fn(&f, 70, 90, |_, _| f.integer(rng.gen_range(0..2)));
        let b = Matrix::from_fn(&f, 90, 65, |_, _| f.integer(rng.gen_range(0..2)));
        let packed = a.mul(&b).unwrap();
        let mut plain = Matrix::zeros(&f, 70, 65);
        for i in 0..70 {
            for j in 0..65 {
                let s: u32 = (0..90).map(|k| a.get(i, k).index() & b.get(k, j).index()).sum();
                plain.set(i, j, f.integer(s as u64));
            }
        }
        assert_eq!(packed, plain);
        assert_eq!(a.rank(), a.rref().1.len());
    }
}
