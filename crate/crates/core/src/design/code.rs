use serde::{Deserialize, Serialize};

use super::{classify_selection, DesignError, Selection, SelectionScheme, UnitScheme};
use crate::distance::DistanceReport;
use crate::duality::DualityCertificate;
use crate::field::Field;
use crate::groupring::TannerDiagnostics;
use crate::polymat::{check_matrix, polynomial_kernel, right_inverse_structured, right_invertible_general, PolyMatError, PolyMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseMethod {
    /// Built from columns of V by the correction recursion.
    Structured,
    /// Hermite form over the polynomial ring.
    General,
}

#[derive(Debug, Clone, Default)]
pub struct Certificates {
    pub right_inverse: Option<(InverseMethod, PolyMatrix)>,
    pub check_matrix: Option<(InverseMethod, PolyMatrix)>,
    pub distance: Option<DistanceReport>,
    pub duality: Option<DualityCertificate>,
    pub ldpc: Option<TannerDiagnostics>,
}

/// A convolutional code `(n, r, δ; μ)` given by a polynomial generator.
#[derive(Debug, Clone)]
pub struct ConvCode {
    generator: PolyMatrix,
    pub n: usize,
    pub r: usize,
    pub delta: usize,
    pub mu: usize,
    pub scheme: Option<SelectionScheme>,
    pub certificates: Certificates,
}

impl ConvCode {
    /// Wraps a generator; δ is the sum of row degrees and μ the largest.
    pub fn from_generator(generator: PolyMatrix) -> Result<ConvCode, DesignError> {
        let (r, n) = (generator.rows(), generator.cols());
        if r == 0 || r > n {
            return Err(DesignError::InfeasibleRate { r, n });
        }
        let degrees = row_degrees(&generator);
        if degrees.iter().any(|d| d.is_none()) || !full_row_rank(&generator) {
            return Err(DesignError::Catastrophic("generator does not have full row rank".into()));
        }
        let degrees: Vec<usize> = degrees.into_iter().map(|d| d.unwrap_or(0)).collect();
        Ok(ConvCode {
            n,
            r,
            delta: degrees.iter().sum(),
            mu: degrees.iter().copied().max().unwrap_or(0),
            generator,
            scheme: None,
            certificates: Certificates::default(),
        })
    }

    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn params(&self) -> (usize, usize, usize, usize) {
        (self.n, self.r, self.delta, self.mu)
    }

    /// Attach a right inverse and a check matrix, preferring the structured
    /// constructions and falling back to elimination over the polynomial ring.
    pub fn certify(&mut self, unit: Option<&UnitScheme>) -> Result<InverseMethod, DesignError> {
        let structured = match (&self.scheme, unit) {
            (Some(s), Some(u)) => right_inverse_structured(s, u).ok().map(|h| (s.clone(), u, h)),
            _ => None,
        };
        let method = if let Some((scheme, unit, h)) = structured {
            let k = check_matrix(&scheme, unit)?;
            self.certificates.right_inverse = Some((InverseMethod::Structured, h));
            self.certificates.check_matrix = Some((InverseMethod::Structured, k));
            InverseMethod::Structured
        } else {
            let h = right_invertible_general(&self.generator)
                .ok_or_else(|| DesignError::Catastrophic("no polynomial right inverse".into()))?;
            let k = polynomial_kernel(&self.generator)?;
            self.certificates.right_inverse = Some((InverseMethod::General, h));
            self.certificates.check_matrix = Some((InverseMethod::General, k));
            InverseMethod::General
        };
        self.verify_inverse_and_check()?;
        Ok(method)
    }

    /// Re-multiply the stored right inverse and check matrix.
    pub fn verify_inverse_and_check(&self) -> Result<(), DesignError> {
        if let Some((_, h)) = &self.certificates.right_inverse {
            if !self.generator.mul(h)?.is_identity() {
                return Err(DesignError::Verification("G·H is not the identity".into()));
            }
        }
        if let Some((_, k)) = &self.certificates.check_matrix {
            if k.cols() != self.n - self.r || !self.generator.mul(k)?.is_zero() {
                return Err(DesignError::Verification("G·K is not zero".into()));
            }
        }
        Ok(())
    }
}

/// Per-row degree; `None` for a zero row.
pub fn row_degrees(g: &PolyMatrix) -> Vec<Option<usize>> {
    (0..g.rows())
        .map(|i| g.blocks().iter().rposition(|b| b.row(i).iter().any(|x| !x.is_zero())))
        .collect()
}

fn full_row_rank(g: &PolyMatrix) -> bool {
    let r = g.rows();
    if g.blocks().first().is_some_and(|b| b.rank() == r) {
        return true;
    }
    // rows' leading coefficients
    let degrees = row_degrees(g);
    let lead = crate::matrix::Matrix::from_fn(g.field(), r, g.cols(), |i, j| {
        degrees[i].map_or(crate::field::Fe::ZERO, |d| g.blocks()[d].get(i, j))
    });
    lead.rank() == r || crate::polymat::hermite_form(g).is_ok()
}

/// `G[z] = Σ_i E_i z^i` with `E_i` the rows of `U` listed in tuple i.
pub fn build_generator(unit: &UnitScheme, scheme: &SelectionScheme) -> Result<ConvCode, DesignError> {
    scheme.check_indices(unit.n())?;
    let blocks = scheme.tuples().iter().map(|t| unit.u().select_rows(t)).collect();
    let g = PolyMatrix::new(unit.field(), scheme.r(), unit.n(), blocks)?;
    let mut code = ConvCode::from_generator(g)?;
    code.scheme = Some(scheme.clone());
    Ok(code)
}

/// Disjoint and unique-row schemes admit the structured constructions.
pub fn structurally_noncatastrophic(scheme: &SelectionScheme) -> bool {
    classify_selection(scheme) != Selection::Unknown
}

impl From<PolyMatError> for DesignError {
    fn from(e: PolyMatError) -> Self {
        match e {
            PolyMatError::Matrix(m) => DesignError::Matrix(m),
            other => DesignError::PolyMat(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_code_parameters() {
        let f = Field::prime(11).unwrap();
        let unit = UnitScheme::fourier(&f, 5).unwrap();
        let sc = SelectionScheme::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let mut code = build_generator(&unit, &sc).unwrap();
        assert_eq!(code.params(), (5, 2, 2, 1));
        assert_eq!(code.certify(Some(&unit)).unwrap(), InverseMethod::Structured);
        let (_, h) = code.certificates.right_inverse.as_ref().unwrap();
        assert_eq!(h.degree(), Some(0));
        assert_eq!(h.coeff(0), unit.v().select_cols(&[0, 1]));
    }

    #[test]
    fn length_three_full_row() {
        let f = Field::prime(7).unwrap();
        let unit = UnitScheme::fourier(&f, 3).unwrap();
        let sc = SelectionScheme::new(vec![vec![0], vec![1], vec![2]]).unwrap();
        let code = build_generator(&unit, &sc).unwrap();
        assert_eq!(code.params(), (3, 1, 2, 2));
    }

    #[test]
    fn out_of_range() {
        let f = Field::prime(7).unwrap();
        let unit = UnitScheme::fourier(&f, 3).unwrap();
        let sc = SelectionScheme::new(vec![vec![0], vec![3]]).unwrap();
        assert!(matches!(build_generator(&unit, &sc), Err(DesignError::IndexOutOfRange { .. })));
    }
}
