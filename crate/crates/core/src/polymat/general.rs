//! Elimination over the polynomial ring: invariant factors for the existence
//! test, and a column Hermite form with recorded unimodular operations for
//! producing right inverses and kernel bases.

use super::{PolyMatError, PolyMatrix};
use crate::field::{Fe, Field};
use crate::poly::Poly;

type Grid = Vec<Vec<Poly>>;

/// Position of the minimal-degree nonzero entry in `a[t.., t..]`, ties broken row-major.
fn min_degree_entry(a: &Grid, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if let Some(d) = x.degree() {
                if best.map_or(true, |(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_cols(a: &mut Grid, x: usize, y: usize) {
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

/// `col_dst -= q · col_src`
fn col_axpy(f: &Field, a: &mut Grid, dst: usize, src: usize, q: &Poly) {
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            row[dst] = row[dst].sub(f, &row[src].mul(f, q));
        }
    }
}

/// `row_dst -= q · row_src`
fn row_axpy(f: &Field, a: &mut Grid, dst: usize, src: usize, q: &Poly) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(&src_row) {
        if !s.is_zero() {
            *x = x.sub(f, &s.mul(f, q));
        }
    }
}

/// Invariant factors (monic; zero polynomials past the rank), `min(rows, cols)` of them.
pub fn invariant_factors(g: &PolyMatrix) -> Vec<Poly> {
    let f = g.field().clone();
    let mut a = g.entries();
    let (r, c) = (g.rows(), g.cols());
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_degree_entry(&a, t) else {
                diag.resize(r.min(c), Poly::zero());
                return diag;
            };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            let pivot = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, rem) = a[i][t].divrem(&f, &pivot);
                row_axpy(&f, &mut a, i, t, &q);
                dirty |= !rem.is_zero();
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, rem) = a[t][j].divrem(&f, &pivot);
                col_axpy(&f, &mut a, j, t, &q);
                dirty |= !rem.is_zero();
            }
            if dirty {
                continue;
            }
            // the pivot must divide everything left; otherwise fold in the offending row
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].divrem(&f, &pivot).1.is_zero()));
            match offender {
                Some(i) => {
                    let one = Poly::constant(f.neg(Fe::ONE));
                    row_axpy(&f, &mut a, t, i, &one);
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic(&f));
    }
    diag
}

/// `G · Q = [L | 0]` with `Q` unimodular and `L` lower triangular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub lower: PolyMatrix,
    pub transform: PolyMatrix,
}

pub fn hermite_form(g: &PolyMatrix) -> Result<HermiteForm, PolyMatError> {
    let f = g.field().clone();
    let (r, n) = (g.rows(), g.cols());
    if r > n {
        return Err(PolyMatError::RankDeficient);
    }
    let mut a = g.entries();
    let mut q: Grid = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
        .collect();
    for i in 0..r {
        loop {
            let pick = (i..n).filter(|&j| !a[i][j].is_zero()).min_by_key(|&j| a[i][j].degree());
            let Some(j) = pick else {
                return Err(PolyMatError::RankDeficient);
            };
            swap_cols(&mut a, i, j);
            swap_cols(&mut q, i, j);
            let pivot = a[i][i].clone();
            let mut done = true;
            for j in i + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let (quot, rem) = a[i][j].divrem(&f, &pivot);
                col_axpy(&f, &mut a, j, i, &quot);
                col_axpy(&f, &mut q, j, i, &quot);
                done &= rem.is_zero();
            }
            if done {
                break;
            }
        }
    }
    let lower: Grid = a.iter().map(|row| row[..r].to_vec()).collect();
    Ok(HermiteForm { lower: PolyMatrix::from_entries(&f, r, r, &lower), transform: PolyMatrix::from_entries(&f, n, n, &q) })
}

/// A polynomial right inverse of `g`, if one exists.
///
/// Existence is decided from the invariant factors; the inverse itself comes
/// from the Hermite form and is checked by multiplication.
pub fn right_invertible_general(g: &PolyMatrix) -> Option<PolyMatrix> {
    let r = g.rows();
    if r > g.cols() {
        return None;
    }
    let factors = invariant_factors(g);
    let exists = factors.iter().all(|d| d.is_unit());
    let hermite = hermite_form(g).ok();
    let diag_units = hermite.as_ref().is_some_and(|h| {
        let l = h.lower.entries();
        (0..r).all(|i| l[i][i].is_unit())
    });
    assert_eq!(exists, diag_units, "invariant factors and Hermite form disagree on right invertibility");
    if !exists {
        return None;
    }
    let h = hermite.expect("full rank");
    let f = g.field().clone();
    let l = h.lower.entries();
    // X = L^{-1} by forward substitution; the diagonal is constant.
    let mut x: Grid = vec![vec![Poly::zero(); r]; r];
    for i in 0..r {
        let dinv = f.inv(l[i][i].coeff(0)).expect("unit diagonal");
        for j in 0..r {
            let mut acc = if i == j { Poly::one() } else { Poly::zero() };
            for k in 0..i {
                acc = acc.sub(&f, &l[i][k].mul(&f, &x[k][j]));
            }
            x[i][j] = acc.scale(&f, dinv);
        }
    }
    let xm = PolyMatrix::from_entries(&f, r, r, &x);
    let cols: Vec<usize> = (0..r).collect();
    let inverse = h.transform.select_cols(&cols).mul(&xm).expect("dimensions");
    assert!(g.mul(&inverse).expect("dimensions").is_identity(), "Hermite right inverse failed verification");
    Some(inverse)
}

/// A basis of the right kernel module: the trailing columns of the Hermite transform.
pub fn polynomial_kernel(g: &PolyMatrix) -> Result<PolyMatrix, PolyMatError> {
    let h = hermite_form(g)?;
    let idx: Vec<usize> = (g.rows()..g.cols()).collect();
    let k = h.transform.select_cols(&idx);
    if !g.mul(&k)?.is_zero() {
        return Err(PolyMatError::VerificationFailed("kernel basis does not annihilate G".into()));
    }
    Ok(k)
}
