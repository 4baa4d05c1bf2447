//! Code cards: a JSON record of a designed code with everything needed to
//! rebuild it and re-check its certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::{
    build_generator, ChebotarevStatus, ConvCode, DesignError, InverseMethod, SelectionScheme, UnitProvenance, UnitScheme,
};
use crate::distance::DistanceReport;
use crate::duality::{DualityCertificate, DualityKind};
use crate::field::{Field, FieldError, FieldSpec};
use crate::groupring::{element_from_terms, unit_from_element, TannerDiagnostics};
use crate::matrix::text::parse_matrix;
use crate::matrix::Matrix;
use crate::polymat::PolyMatrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CardError {
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("card is malformed: {0}")]
    Malformed(String),
    #[error("certificate check failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Polynomial matrix as packed element indices, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub rows: usize,
    pub cols: usize,
    pub blocks: Vec<Vec<Vec<u32>>>,
}

impl PolyJson {
    pub fn from_poly(m: &PolyMatrix) -> PolyJson {
        let blocks = m
            .blocks()
            .iter()
            .map(|b| (0..b.rows()).map(|i| b.row(i).iter().map(|x| x.index()).collect()).collect())
            .collect();
        PolyJson { rows: m.rows(), cols: m.cols(), blocks }
    }

    pub fn to_poly(&self, field: &Field) -> Result<PolyMatrix, CardError> {
        let bad = || CardError::Malformed(format!("polynomial matrix {}x{}", self.rows, self.cols));
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            if b.len() != self.rows || b.iter().any(|r| r.len() != self.cols) {
                return Err(bad());
            }
            let data = b
                .iter()
                .flatten()
                .map(|&x| field.element(x as u64))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            blocks.push(Matrix::from_vec(field, self.rows, self.cols, data));
        }
        PolyMatrix::new(field, self.rows, self.cols, blocks).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseJson {
    pub method: InverseMethod,
    pub matrix: PolyJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityJson {
    pub kind: DualityKind,
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_generator: Option<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_inverse: Option<PolyJson>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_inverse: Option<InverseJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_matrix: Option<InverseJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ldpc: Option<TannerDiagnostics>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitJson {
    pub provenance: UnitProvenance,
    pub chebotarev: ChebotarevStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_size: Option<usize>,
    /// Rows of `U` for units with no other way to rebuild them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCard {
    pub schema_version: u32,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitJson>,
    pub n: usize,
    pub r: usize,
    pub delta: usize,
    pub mu: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SelectionScheme>,
    pub generator: PolyJson,
    pub certificates: CertificatesJson,
    pub created_unix: u64,
}

fn duality_json(c: &DualityCertificate) -> DualityJson {
    DualityJson {
        kind: c.kind,
        characteristic: c.characteristic,
        dual_generator: c.dual_generator.as_ref().map(PolyJson::from_poly),
        right_inverse: c.right_inverse.as_ref().map(PolyJson::from_poly),
    }
}

impl CodeCard {
    pub fn new(code: &ConvCode, unit: Option<&UnitScheme>, created_unix: u64) -> CodeCard {
        let c = &code.certificates;
        let inv = |x: &Option<(InverseMethod, PolyMatrix)>| {
            x.as_ref().map(|(method, m)| InverseJson { method: *method, matrix: PolyJson::from_poly(m) })
        };
        let unit = unit.map(|u| UnitJson {
            provenance: u.provenance.clone(),
            chebotarev: u.chebotarev,
            block_size: u.block_size(),
            matrix: matches!(u.provenance, UnitProvenance::Explicit)
                .then(|| (0..u.n()).map(|i| u.u().row(i).iter().map(|x| x.index()).collect()).collect()),
        });
        CodeCard {
            schema_version: SCHEMA_VERSION,
            field: code.field().spec(),
            unit,
            n: code.n,
            r: code.r,
            delta: code.delta,
            mu: code.mu,
            scheme: code.scheme.clone(),
            generator: PolyJson::from_poly(code.generator()),
            certificates: CertificatesJson {
                right_inverse: inv(&c.right_inverse),
                check_matrix: inv(&c.check_matrix),
                distance: c.distance.clone(),
                duality: c.duality.as_ref().map(duality_json),
                ldpc: c.ldpc.clone(),
            },
            created_unix,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cards serialize")
    }

    pub fn from_json(s: &str) -> Result<CodeCard, CardError> {
        let card: CodeCard = serde_json::from_str(s)?;
        if card.schema_version != SCHEMA_VERSION {
            return Err(CardError::Schema(card.schema_version));
        }
        Ok(card)
    }

    /// Rebuild the unit the card was designed from, if recorded.
    pub fn rebuild_unit(&self, field: &Field) -> Result<Option<UnitScheme>, CardError> {
        let Some(u) = &self.unit else {
            return Ok(None);
        };
        let mut unit = match &u.provenance {
            UnitProvenance::Fourier { length, .. } => UnitScheme::fourier(field, *length)?,
            UnitProvenance::GroupRing { group, support, inverse } => {
                let e = element_from_terms(field, group, support).map_err(|e| CardError::Malformed(e.to_string()))?;
                unit_from_element(&e, *inverse)?
            }
            UnitProvenance::MatrixFile { path } => {
                let text = std::fs::read_to_string(path)?;
                let m = parse_matrix(&text).map_err(|e| CardError::Malformed(format!("{path}: {e}")))?;
                UnitScheme::from_u(m)?
            }
            UnitProvenance::Explicit => {
                let rows = u.matrix.as_ref().ok_or_else(|| CardError::Malformed("explicit unit without matrix".into()))?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(CardError::Malformed("explicit unit is not square".into()));
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|&x| field.element(x as u64))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| CardError::Malformed("unit entry outside the field".into()))?;
                UnitScheme::from_u(Matrix::from_vec(field, n, n, data))?
            }
        };
        unit.provenance = u.provenance.clone();
        unit.chebotarev = u.chebotarev;
        if let Some(b) = u.block_size {
            unit = unit.with_blocks(b)?;
        }
        Ok(Some(unit))
    }

    /// Rebuild the code with its certificates from the card.
    pub fn to_code(&self) -> Result<(ConvCode, Option<UnitScheme>), CardError> {
        let field = self.field.build()?;
        let g = self.generator.to_poly(&field)?;
        let mut code = ConvCode::from_generator(g)?;
        code.scheme = self.scheme.clone();
        let c = &self.certificates;
        let inv = |x: &Option<InverseJson>| -> Result<Option<(InverseMethod, PolyMatrix)>, CardError> {
            x.as_ref().map(|j| Ok((j.method, j.matrix.to_poly(&field)?))).transpose()
        };
        code.certificates.right_inverse = inv(&c.right_inverse)?;
        code.certificates.check_matrix = inv(&c.check_matrix)?;
        code.certificates.distance = c.distance.clone();
        code.certificates.ldpc = c.ldpc.clone();
        code.certificates.duality = c
            .duality
            .as_ref()
            .map(|d| -> Result<DualityCertificate, CardError> {
                Ok(DualityCertificate {
                    kind: d.kind,
                    characteristic: d.characteristic,
                    dual_generator: d.dual_generator.as_ref().map(|m| m.to_poly(&field)).transpose()?,
                    right_inverse: d.right_inverse.as_ref().map(|m| m.to_poly(&field)).transpose()?,
                })
            })
            .transpose()?;
        let unit = self.rebuild_unit(&field)?;
        Ok((code, unit))
    }

    /// Rebuild everything and re-check every certificate by multiplication.
    pub fn verify(&self) -> Result<(ConvCode, Option<UnitScheme>), CardError> {
        let fail = |m: &str| CardError::Verification(m.to_string());
        let (code, unit) = self.to_code()?;
        if code.params() != (self.n, self.r, self.delta, self.mu) {
            return Err(fail("recorded parameters do not match the generator"));
        }
        if let (Some(unit), Some(scheme)) = (&unit, &self.scheme) {
            if build_generator(unit, scheme)?.generator() != code.generator() {
                return Err(fail("unit and scheme do not reproduce the generator"));
            }
        }
        code.verify_inverse_and_check().map_err(|e| fail(&e.to_string()))?;
        if let Some(d) = &code.certificates.distance {
            if !d.is_consistent() || !d.verify_witness(&code) {
                return Err(fail("distance witness does not reproduce the upper bound"));
            }
            if code.r < code.n && d.upper > crate::design::gsb(code.n, code.r, code.delta) {
                return Err(fail("distance upper bound exceeds the generalized Singleton bound"));
            }
        }
        if let Some(d) = &code.certificates.duality {
            if !d.verify(&code) {
                return Err(fail("duality certificate does not hold"));
            }
        }
        Ok((code, unit))
    }
}
