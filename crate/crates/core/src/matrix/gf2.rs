//! Bit-packed GF(2) matrices for the large LDPC blocks.

use crate::field::{Fe, Field};

use super::Matrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, x) in m.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn to_matrix(&self, field: &Field) -> Matrix {
        Matrix::from_fn(field, self.rows, self.cols, |i, j| if self.get(i, j) { Fe::ONE } else { Fe::ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.words {
            self.bits.swap(a * self.words + k, b * self.words + k);
        }
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.bits[i * out.words..(i + 1) * out.words];
            for k in 0..self.cols {
                if self.get(i, k) {
                    for (o, &b) in orow.iter_mut().zip(other.row_words(k)) {
                        *o ^= b;
                    }
                }
            }
        }
        out
    }

    /// Row reduction in place; returns the pivot columns.
    fn eliminate(&mut self, col_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..col_limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let limit = m.cols;
        m.eliminate(limit).len()
    }

    pub fn invert(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        if aug.eliminate(n).len() < n {
            return None;
        }
        let mut out = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if aug.get(i, n + j) {
                    out.set(i, j, true);
                }
            }
        }
        Some(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == BitMatrix::identity(self.rows) && self.rows == self.cols
    }

    /// Nonzero count in each column.
    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for i in 0..self.rows {
            for (j, wj) in w.iter_mut().enumerate() {
                if self.get(i, j) {
                    *wj += 1;
                }
            }
        }
        w
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
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
    fn inverse_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut found = 0;
        while found < 3 {
            let mut m = BitMatrix::zeros(100, 100);
            for i in 0..100 {
                for j in 0..100 {
                    m.set(i, j, rng.gen_bool(0.5));
                }
            }
            if let Some(inv) = m.invert() {
                assert!(m.mul(&inv).is_identity());
                assert!(inv.mul(&m).is_identity());
                assert_eq!(m.rank(), 100);
                found += 1;
            } else {
                assert!(m.rank() < 100);
            }
        }
    }
}
