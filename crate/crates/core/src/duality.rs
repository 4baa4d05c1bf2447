//! Self-dual and dual-containing codes from orthogonal units (`U U^T = I`).
//!
//! The dual of the code generated by `G[z]` is generated by `K[z^{-1}]^T`
//! for any polynomial check matrix `K` with `G K = 0`. Membership of a row
//! `h` in the code is decided with a polynomial right inverse `R`: `h` lies in
//! the row module exactly when `(h R) G = h`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::{block_scheme, build_generator, ConvCode, DesignError, UnitScheme};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::polymat::{poly_mul, LaurentMatrix, PolyMatError, PolyMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("U U^T is not the identity")]
    NotOrthogonal,
    #[error("construction needs characteristic 2, field has characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("self-duality needs n = 2r, got n = {n}, r = {r}")]
    WrongRate { n: usize, r: usize },
    #[error("{blocks} blocks do not divide {n} rows")]
    BadBlocks { blocks: usize, n: usize },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    PolyMat(#[from] PolyMatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualityKind {
    SelfDual,
    DualContaining,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityCertificate {
    pub kind: DualityKind,
    pub characteristic: u64,
    /// Generator of the dual code, `z^d K[z^{-1}]^T` (dual-containing only).
    pub dual_generator: Option<PolyMatrix>,
    /// Right inverse used for the membership test (dual-containing only).
    pub right_inverse: Option<PolyMatrix>,
}

impl DualityCertificate {
    /// Redo the multiplications behind the certificate.
    pub fn verify(&self, code: &ConvCode) -> bool {
        match self.kind {
            DualityKind::SelfDual => self_dual_product_is_zero(code.generator()).unwrap_or(false),
            DualityKind::DualContaining => match (&self.dual_generator, &self.right_inverse) {
                (Some(d), Some(r)) => {
                    code.generator().mul(r).is_ok_and(|p| p.is_identity()) && rows_in_module(d, r, code.generator())
                }
                _ => false,
            },
        }
    }
}

fn self_dual_product_is_zero(g: &PolyMatrix) -> Result<bool, PolyMatError> {
    let rev = LaurentMatrix::from(g).reversed_transpose();
    Ok(poly_mul(g, rev)?.is_zero())
}

/// `G[z] G[z^{-1}]^T = 0` with `n = 2r`.
pub fn is_self_dual(code: &ConvCode) -> Result<Option<DualityCertificate>, DualityError> {
    if code.n != 2 * code.r {
        return Err(DualityError::WrongRate { n: code.n, r: code.r });
    }
    Ok(self_dual_product_is_zero(code.generator())?.then(|| DualityCertificate {
        kind: DualityKind::SelfDual,
        characteristic: code.field().characteristic(),
        dual_generator: None,
        right_inverse: None,
    }))
}

/// `z^d K[z^{-1}]^T` with `d = deg K`: the polynomial generator of the dual code.
pub fn dual_generator(check: &PolyMatrix) -> PolyMatrix {
    let d = check.degree().unwrap_or(0) as i64;
    LaurentMatrix::from(check)
        .reversed_transpose()
        .shift(d)
        .to_poly()
        .expect("shifted by the degree")
}

fn rows_in_module(rows: &PolyMatrix, r: &PolyMatrix, g: &PolyMatrix) -> bool {
    (0..rows.rows()).all(|i| {
        let h = rows.select_rows(&[i]);
        h.mul(r).and_then(|x| x.mul(g)).is_ok_and(|back| back == h)
    })
}

/// Every row of the dual generator built from `check` lies in the row module of `G`.
///
/// `right_inverse` must satisfy `G R = I`; the answer does not depend on which one.
pub fn is_dual_containing(
    code: &ConvCode,
    check: &PolyMatrix,
    right_inverse: &PolyMatrix,
) -> Result<Option<DualityCertificate>, DualityError> {
    let g = code.generator();
    if check.rows() != code.n || !g.mul(check)?.is_zero() {
        return Err(PolyMatError::DimensionMismatch(format!(
            "check matrix {}x{} does not annihilate G",
            check.rows(),
            check.cols()
        ))
        .into());
    }
    if !g.mul(right_inverse)?.is_identity() {
        return Err(PolyMatError::VerificationFailed("G·R is not the identity".into()).into());
    }
    let dual = dual_generator(check);
    Ok(rows_in_module(&dual, right_inverse, g).then(|| DualityCertificate {
        kind: DualityKind::DualContaining,
        characteristic: code.field().characteristic(),
        dual_generator: Some(dual),
        right_inverse: Some(right_inverse.clone()),
    }))
}

pub fn is_orthogonal_unit(u: &Matrix) -> bool {
    u.is_square() && u.mul(&u.transpose()).is_ok_and(|p| p.is_identity())
}

fn orthogonal_unit(u: &Matrix, blocks: usize) -> Result<UnitScheme, DualityError> {
    if !is_orthogonal_unit(u) {
        return Err(DualityError::NotOrthogonal);
    }
    if blocks == 0 || u.rows() % blocks != 0 {
        return Err(DualityError::BadBlocks { blocks, n: u.rows() });
    }
    Ok(UnitScheme::new(u.clone(), u.transpose())?.with_blocks(u.rows() / blocks)?)
}

/// Self-dual code from an orthogonal unit over a field of characteristic 2.
///
/// Two blocks give `A + B z`; four blocks in the order `perm` give
/// `(P_0; P_1) + (P_2; P_3) z`. The certificate is computed, not assumed.
pub fn build_self_dual(u: &Matrix, blocks: usize, perm: Option<&[usize]>) -> Result<ConvCode, DualityError> {
    let p = u.field().characteristic();
    if p != 2 {
        return Err(DualityError::WrongCharacteristic(p));
    }
    let unit = orthogonal_unit(u, blocks)?;
    let tuples: Vec<Vec<usize>> = match (blocks, perm) {
        (2, None) => vec![vec![0], vec![1]],
        (4, None) => vec![vec![0, 1], vec![2, 3]],
        (4, Some(p)) if p.iter().sorted().copied().eq(0..4) => vec![vec![p[0], p[1]], vec![p[2], p[3]]],
        _ => return Err(DualityError::BadBlocks { blocks, n: u.rows() }),
    };
    let scheme = block_scheme(&unit, &tuples)?;
    certified_self_dual(&unit, build_generator(&unit, &scheme)?)
}

/// Attach inverse, check matrix and self-dual certificate to a code built from `unit`.
///
/// Orthogonality of the unit is sufficient but not necessary: `A + B z` is
/// self-dual whenever `A A^T + B B^T = 0` and `A B^T = 0`.
pub fn certified_self_dual(unit: &UnitScheme, mut code: ConvCode) -> Result<ConvCode, DualityError> {
    code.certify(Some(unit))?;
    let cert = is_self_dual(&code)?
        .ok_or_else(|| DesignError::Verification("G[z] G[z^-1]^T is not zero".into()))?;
    code.certificates.duality = Some(cert);
    Ok(code)
}

/// Sliding-window code `(B_0; …; B_{k-2}) + (B_1; …; B_{k-1}) z` over the `k`
/// row blocks of an orthogonal unit, with a dual-containing certificate.
pub fn build_dual_containing(u: &Matrix, blocks: usize) -> Result<ConvCode, DualityError> {
    if blocks < 2 {
        return Err(DualityError::BadBlocks { blocks, n: u.rows() });
    }
    let unit = orthogonal_unit(u, blocks)?;
    let scheme = block_scheme(&unit, &[(0..blocks - 1).collect(), (1..blocks).collect()])?;
    certified_dual_containing(&unit, build_generator(&unit, &scheme)?)
}

/// Attach inverse, check matrix and dual-containing certificate to a code built from `unit`.
pub fn certified_dual_containing(unit: &UnitScheme, mut code: ConvCode) -> Result<ConvCode, DualityError> {
    code.certify(Some(unit))?;
    let (_, k) = code.certificates.check_matrix.clone().expect("certify sets the check matrix");
    let (_, r) = code.certificates.right_inverse.clone().expect("certify sets the right inverse");
    let cert = is_dual_containing(&code, &k, &r)?
        .ok_or_else(|| DesignError::Verification("dual code is not contained in the code".into()))?;
    code.certificates.duality = Some(cert);
    Ok(code)
}

/// Orthogonal `n × n` matrices over a prime field, in lexicographic order of
/// their rows, stopping after `limit`. Exhaustive, so only for tiny `n`.
pub fn orthogonal_matrices(field: &Field, n: usize, limit: usize) -> Vec<Matrix> {
    let f = field;
    let dot = |a: &[Fe], b: &[Fe]| a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
    let rows: Vec<Vec<Fe>> = (0..n)
        .map(|_| f.elements().collect::<Vec<_>>())
        .multi_cartesian_product()
        .filter(|v| dot(v, v) == Fe::ONE)
        .collect();
    let mut picks: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(chosen) = stack.pop() {
        if picks.len() >= limit {
            break;
        }
        if chosen.len() == n {
            picks.push(chosen);
            continue;
        }
        let mut next = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if !chosen.contains(&i) && chosen.iter().all(|&c| dot(&rows[c], row).is_zero()) {
                let mut c = chosen.clone();
                c.push(i);
                next.push(c);
            }
        }
        // reversed so the smallest candidate is popped first
        stack.extend(next.into_iter().rev());
    }
    picks.into_iter().map(|p| Matrix::from_fn(f, n, n, |i, j| rows[p[i]][j])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{free_distance_exact, DistanceOptions};
    use crate::groupring::{to_matrix, GroupRingElement, GroupSpec};

    fn unit_of(group: GroupSpec, support: &[u32]) -> Matrix {
        let f = Field::prime(2).unwrap();
        to_matrix(&GroupRingElement::from_support(&f, group, support))
    }

    fn dfree(code: &ConvCode) -> usize {
        free_distance_exact(code, &DistanceOptions::default()).unwrap().lower
    }

    #[test]
    fn cyclic_four_self_dual() {
        let u = unit_of(GroupSpec::Cyclic { n: 4 }, &[1, 2, 3]);
        let code = build_self_dual(&u, 2, None).unwrap();
        assert_eq!(code.params(), (4, 2, 2, 1));
        assert!(code.certificates.duality.as_ref().unwrap().verify(&code));
        assert_eq!(dfree(&code), 4);
    }

    #[test]
    fn dihedral_eight_self_dual_without_orthogonality() {
        let g = GroupSpec::Dihedral { n: 4 };
        let u = unit_of(g, &[0, g.element(0, 1), g.element(1, 1)]);
        // the embedding of 1 + b + ba is symmetric but not orthogonal
        assert!(matches!(build_self_dual(&u, 2, None), Err(DualityError::NotOrthogonal)));
        let unit = UnitScheme::from_u(u.clone()).unwrap().with_blocks(4).unwrap();
        let code = build_generator(&unit, &block_scheme(&unit, &[vec![0], vec![1]]).unwrap()).unwrap();
        assert_eq!(code.params(), (8, 4, 4, 1));
        // A A^T = B B^T and A B^T = 0, which is all self-duality needs in characteristic 2
        let (a, b) = (u.select_rows(&[0, 1, 2, 3]), u.select_rows(&[4, 5, 6, 7]));
        assert_eq!(a.mul(&a.transpose()).unwrap(), b.mul(&b.transpose()).unwrap());
        assert!(a.mul(&b.transpose()).unwrap().is_zero());
        let code = certified_self_dual(&unit, code).unwrap();
        assert!(code.certificates.duality.as_ref().unwrap().verify(&code));
        assert_eq!(dfree(&code), 6);
    }

    #[test]
    fn all_block_orders_self_dual() {
        // u^2 = 1 + a^2 + a^6 for u = a + a^4 + a^7
        let u = unit_of(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6]);
        let mut count = 0;
        for p in (0..4).permutations(4) {
            let code = build_self_dual(&u, 4, Some(&p)).unwrap();
            assert!(code.certificates.duality.as_ref().unwrap().verify(&code));
            count += 1;
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn cyclic_eight_dual_containing() {
        let u = unit_of(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6]);
        let code = build_dual_containing(&u, 4).unwrap();
        assert_eq!(code.params(), (8, 6, 6, 1));
        // rows 0, 2, 4 of U sum to a single 1 at position 2; rows 2, 4, 6 to one at 4
        let input = vec![vec![Fe::ONE, Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ONE, Fe::ZERO]];
        assert_eq!(crate::distance::codeword_weight(&crate::distance::encode(&code, &input)), 2);
        assert_eq!(dfree(&code), 2);
        // dual generator A + Bz + Cz^2 + Dz^3 = ((I,0,0) + (0,0,I) z^2) G
        let cert = code.certificates.duality.as_ref().unwrap();
        let dual = cert.dual_generator.as_ref().unwrap();
        let blocks: Vec<Matrix> = (0..4).map(|k| u.select_rows(&[2 * k, 2 * k + 1])).collect();
        assert_eq!(dual, &PolyMatrix::from_blocks(blocks).unwrap());
    }

    #[test]
    fn answer_does_not_depend_on_right_inverse() {
        let u = unit_of(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6]);
        let code = build_dual_containing(&u, 4).unwrap();
        let (_, k) = code.certificates.check_matrix.clone().unwrap();
        let (_, r) = code.certificates.right_inverse.clone().unwrap();
        // R + K W is another right inverse
        let f = code.field().clone();
        let w = PolyMatrix::monomial(&Matrix::from_fn(&f, 2, 6, |i, j| if i == j % 2 { Fe::ONE } else { Fe::ZERO }), 1);
        let r2 = r.add(&k.mul(&w).unwrap()).unwrap();
        assert_ne!(r, r2);
        assert!(is_dual_containing(&code, &k, &r2).unwrap().is_some());
    }

    #[test]
    fn characteristic_three_orthogonal() {
        let f = Field::prime(3).unwrap();
        let all = orthogonal_matrices(&f, 3, 1000);
        // only signed permutations have unit rows in length 3 over Z_3
        assert_eq!(all.len(), 48);
        let u = all.into_iter().find(|m| !m.is_identity()).unwrap();
        let code = build_dual_containing(&u, 3).unwrap();
        assert_eq!(code.params(), (3, 2, 2, 1));
        // ((1,0) + (0,1) z) G = e0 - e1 z + e2 z^2
        let m = PolyMatrix::from_blocks(vec![Matrix::from_ints(&f, &[&[1, 0]]), Matrix::from_ints(&f, &[&[0, 1]])]).unwrap();
        let lhs = m.mul(code.generator()).unwrap();
        let rows = |i: usize| u.select_rows(&[i]);
        let want = PolyMatrix::from_blocks(vec![rows(0), rows(1).neg(), rows(2)]).unwrap();
        assert_eq!(lhs, want);
        assert_eq!(code.certificates.duality.as_ref().unwrap().dual_generator.as_ref(), Some(&want));
    }

    #[test]
    fn plain_block_code_not_self_dual() {
        let f = Field::prime(5).unwrap();
        let unit = UnitScheme::fourier(&f, 4).unwrap();
        let code = ConvCode::from_generator(PolyMatrix::constant(&unit.u().select_rows(&[0, 1]))).unwrap();
        assert!(is_self_dual(&code).unwrap().is_none());
        let rate_one_third = ConvCode::from_generator(PolyMatrix::constant(&unit.u().select_rows(&[0]))).unwrap();
        assert!(matches!(is_self_dual(&rate_one_third), Err(DualityError::WrongRate { .. })));
    }

    #[test]
    fn low_rate_code_is_not_dual_containing() {
        let f = Field::prime(5).unwrap();
        let unit = UnitScheme::fourier(&f, 4).unwrap();
        let scheme = crate::design::SelectionScheme::new(vec![vec![0], vec![1]]).unwrap();
        let mut code = build_generator(&unit, &scheme).unwrap();
        code.certify(Some(&unit)).unwrap();
        let (_, k) = code.certificates.check_matrix.clone().unwrap();
        let (_, r) = code.certificates.right_inverse.clone().unwrap();
        assert!(is_dual_containing(&code, &k, &r).unwrap().is_none());
    }

    #[test]
    fn perturbed_row_leaves_the_module() {
        let u = unit_of(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6]);
        let code = build_dual_containing(&u, 4).unwrap();
        let cert = code.certificates.duality.clone().unwrap();
        let dual = cert.dual_generator.unwrap();
        let r = cert.right_inverse.unwrap();
        let f = code.field().clone();
        let mut bump = Matrix::zeros(&f, 2, 8);
        bump.set(0, 0, Fe::ONE);
        let perturbed = dual.add(&PolyMatrix::constant(&bump)).unwrap();
        assert!(!rows_in_module(&perturbed, &r, code.generator()));
    }

    #[test]
    fn wrong_inputs_rejected() {
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(
            build_self_dual(&Matrix::identity(&f3, 2), 2, None),
            Err(DualityError::WrongCharacteristic(3))
        ));
        let u = unit_of(GroupSpec::Cyclic { n: 4 }, &[0, 1]);
        assert!(matches!(build_dual_containing(&u, 2), Err(DualityError::NotOrthogonal)));
    }
}
