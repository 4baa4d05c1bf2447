use serde::{Deserialize, Serialize};

use super::DesignError;
use crate::field::{fourier_field_for_length, Field, FourierRoute};
use crate::matrix::{chebotarev_check, fourier_matrix, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChebotarevStatus {
    VerifiedTrue,
    VerifiedFalse,
    /// Backed by a theorem for the field/length pair, not checked exhaustively.
    Assumed,
    Unknown,
}

impl ChebotarevStatus {
    /// Whether mds component bounds may be used.
    pub fn usable(self) -> bool {
        matches!(self, ChebotarevStatus::VerifiedTrue | ChebotarevStatus::Assumed)
    }
}

/// Where the unit came from, recorded in code cards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum UnitProvenance {
    Fourier { length: usize, route: Option<FourierRoute> },
    /// `support` lists `(coefficient, [i, j])` terms. With `inverse` set, the
    /// element embeds as `V` and `U` is the embedding of its inverse.
    GroupRing {
        group: String,
        support: Vec<(u32, Vec<u32>)>,
        #[serde(default)]
        inverse: bool,
    },
    MatrixFile { path: String },
    Explicit,
}

/// `U V = I`; rows of `U` are the `e_i`, columns of `V` the `f_j`.
#[derive(Debug, Clone)]
pub struct UnitScheme {
    u: Matrix,
    v: Matrix,
    pub chebotarev: ChebotarevStatus,
    block_size: Option<usize>,
    pub provenance: UnitProvenance,
}

impl UnitScheme {
    pub fn new(u: Matrix, v: Matrix) -> Result<UnitScheme, DesignError> {
        if !u.is_square() || u.rows() != v.rows() || u.cols() != v.cols() {
            return Err(DesignError::NotUnit);
        }
        if !u.mul(&v)?.is_identity() {
            return Err(DesignError::NotUnit);
        }
        Ok(UnitScheme { u, v, chebotarev: ChebotarevStatus::Unknown, block_size: None, provenance: UnitProvenance::Explicit })
    }

    /// Pairs `u` with its inverse.
    pub fn from_u(u: Matrix) -> Result<UnitScheme, DesignError> {
        let v = u.invert()?;
        UnitScheme::new(u, v)
    }

    /// Fourier pair of length `n` over `field`; Chebotarev status left unknown.
    pub fn fourier(field: &Field, n: usize) -> Result<UnitScheme, DesignError> {
        let (u, v) = fourier_matrix(field, n)?;
        let mut unit = UnitScheme::new(u, v)?;
        unit.provenance = UnitProvenance::Fourier { length: n, route: None };
        Ok(unit)
    }

    /// Fourier pair over the field chosen by [`fourier_field_for_length`]; the
    /// Chebotarev property is checked when `n <= verify_up_to`, assumed otherwise.
    pub fn fourier_for_length(n: usize, q: Option<u64>, verify_up_to: usize) -> Result<UnitScheme, DesignError> {
        let ff = fourier_field_for_length(n as u64, q)?;
        let mut unit = UnitScheme::fourier(&ff.field, n)?;
        unit.provenance = UnitProvenance::Fourier { length: n, route: Some(ff.route) };
        if n <= verify_up_to {
            unit.verify_chebotarev(verify_up_to)?;
        } else {
            unit.chebotarev = ChebotarevStatus::Assumed;
        }
        Ok(unit)
    }

    pub fn verify_chebotarev(&mut self, guard: usize) -> Result<bool, DesignError> {
        let holds = chebotarev_check(&self.u, guard)?;
        self.chebotarev = if holds { ChebotarevStatus::VerifiedTrue } else { ChebotarevStatus::VerifiedFalse };
        Ok(holds)
    }

    pub fn with_blocks(mut self, block_size: usize) -> Result<UnitScheme, DesignError> {
        if block_size == 0 || self.n() % block_size != 0 {
            return Err(DesignError::InvalidScheme(format!("block size {block_size} does not divide {}", self.n())));
        }
        self.block_size = Some(block_size);
        Ok(self)
    }

    pub fn with_provenance(mut self, p: UnitProvenance) -> UnitScheme {
        self.provenance = p;
        self
    }

    pub fn n(&self) -> usize {
        self.u.rows()
    }

    pub fn field(&self) -> &Field {
        self.u.field()
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn block_size(&self) -> Option<usize> {
        self.block_size
    }

    /// Row `e_i` of `U`.
    pub fn e(&self, i: usize) -> Matrix {
        self.u.select_rows(&[i])
    }

    /// Column `f_j` of `V`.
    pub fn f(&self, j: usize) -> Matrix {
        self.v.select_cols(&[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_unit_is_biorthogonal() {
        let f = Field::prime(11).unwrap();
        let unit = UnitScheme::fourier(&f, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let ef = unit.e(i).mul(&unit.f(j)).unwrap();
                assert_eq!(ef.get(0, 0).index(), u32::from(i == j));
            }
        }
    }

    #[test]
    fn rejects_non_unit() {
        let f = Field::prime(5).unwrap();
        let u = Matrix::identity(&f, 3);
        let v = Matrix::identity(&f, 3).scale(f.integer(2));
        assert!(matches!(UnitScheme::new(u, v), Err(DesignError::NotUnit)));
    }

    #[test]
    fn germain_length_verified_or_assumed() {
        let small = UnitScheme::fourier_for_length(5, None, 7).unwrap();
        assert_eq!(small.chebotarev, ChebotarevStatus::VerifiedTrue);
        let big = UnitScheme::fourier_for_length(113, None, 7).unwrap();
        assert_eq!(big.chebotarev, ChebotarevStatus::Assumed);
        assert_eq!(big.field().cardinality(), 227);
    }
}
