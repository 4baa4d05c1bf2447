//! Right inverses and check matrices read off the unit scheme.
//!
//! For `G[z] = Σ E_i z^i` built from rows of `U`, column `f_j` of `V` gives
//! `G f_j = Σ_i z^i Σ_{t : E_i[t] = j} u_t`. Starting from `h_c = f_{E_0[c]}`,
//! each stray term `z^i u_t` is cancelled by subtracting `z^i h_t`. This
//! terminates exactly when the correction graph (edge `c -> t` whenever
//! `E_i[t] = E_0[c]` for some i >= 1) has no cycle.

use super::{PolyMatError, PolyMatrix};
use crate::design::{SelectionScheme, UnitScheme};
use crate::matrix::Matrix;

/// `(i, t)` with `i >= 1` and `E_i[t] = row`.
fn occurrences(scheme: &SelectionScheme, row: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, tuple) in scheme.tuples().iter().enumerate().skip(1) {
        for (t, &x) in tuple.iter().enumerate() {
            if x == row {
                out.push((i, t));
            }
        }
    }
    out
}

/// Columns of `E_0` in an order where every correction dependency comes first,
/// or the first cycle found.
pub fn correction_order(scheme: &SelectionScheme) -> Result<Vec<usize>, Vec<usize>> {
    let r = scheme.r();
    let deps: Vec<Vec<usize>> = (0..r)
        .map(|c| occurrences(scheme, scheme.tuple(0)[c]).into_iter().map(|(_, t)| t).collect())
        .collect();
    // 0 = new, 1 = on stack, 2 = done
    let mut state = vec![0u8; r];
    let mut order = Vec::with_capacity(r);
    for root in 0..r {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&child) = deps[node].get(*next) {
                *next += 1;
                match state[child] {
                    0 => {
                        state[child] = 1;
                        stack.push((child, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(x, _)| x == child).expect("on stack");
                        return Err(stack[start..].iter().map(|&(x, _)| x).collect());
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                order.push(node);
                stack.pop();
            }
        }
    }
    Ok(order)
}

fn generator(scheme: &SelectionScheme, unit: &UnitScheme) -> Result<PolyMatrix, PolyMatError> {
    let blocks = scheme.tuples().iter().map(|t| unit.u().select_rows(t)).collect();
    PolyMatrix::new(unit.field(), scheme.r(), unit.n(), blocks)
}

fn check_scheme(scheme: &SelectionScheme, unit: &UnitScheme) -> Result<(), PolyMatError> {
    scheme
        .check_indices(unit.n())
        .map_err(|e| PolyMatError::ConditionNotMet(e.to_string()))
}

/// Right inverse `H[z]` with `G[z] H[z] = I_r`, verified before returning.
///
/// When `E_0` shares no row with later tuples this is the constant `E_0^*`
/// (the matching columns of `V`).
pub fn right_inverse_structured(scheme: &SelectionScheme, unit: &UnitScheme) -> Result<PolyMatrix, PolyMatError> {
    check_scheme(scheme, unit)?;
    let order = correction_order(scheme).map_err(|cycle| {
        PolyMatError::ConditionNotMet(format!("correction cycle through E_0 positions {cycle:?}"))
    })?;
    let e0 = scheme.tuple(0);
    let h = if e0.iter().all(|&row| occurrences(scheme, row).is_empty()) {
        PolyMatrix::constant(&unit.v().select_cols(e0))
    } else {
        let mut cols: Vec<Option<PolyMatrix>> = vec![None; scheme.r()];
        for c in order {
            let mut col = PolyMatrix::constant(&unit.f(e0[c]));
            for (i, t) in occurrences(scheme, e0[c]) {
                let dep = cols[t].as_ref().expect("dependencies first");
                col = col.sub(&dep.shift(i))?;
            }
            cols[c] = Some(col);
        }
        let cols: Vec<PolyMatrix> = cols.into_iter().map(|c| c.expect("all columns built")).collect();
        PolyMatrix::hstack(&cols.iter().collect::<Vec<_>>())?
    };
    if !generator(scheme, unit)?.mul(&h)?.is_identity() {
        return Err(PolyMatError::VerificationFailed("G·H is not the identity".into()));
    }
    Ok(h)
}

/// Check matrix `K[z]` (n x (n-r)) with `G[z] K[z] = 0` and constant term of full column rank.
///
/// Column for each row `j` outside `E_0`, ascending: `f_j - Σ_{E_i[t] = j, i >= 1} z^i H[:, t]`.
pub fn check_matrix(scheme: &SelectionScheme, unit: &UnitScheme) -> Result<PolyMatrix, PolyMatError> {
    let h = right_inverse_structured(scheme, unit)?;
    let e0 = scheme.tuple(0);
    let n = unit.n();
    let outside: Vec<usize> = (0..n).filter(|j| !e0.contains(j)).collect();
    let mut k = PolyMatrix::constant(&unit.v().select_cols(&outside));
    if k.cols() == 0 {
        return Ok(PolyMatrix::zero(unit.field(), n, 0));
    }
    for (pos, &j) in outside.iter().enumerate() {
        for (i, t) in occurrences(scheme, j) {
            let mut place = Matrix::zeros(unit.field(), 1, outside.len());
            place.set(0, pos, crate::field::Fe::ONE);
            let term = h.select_cols(&[t]).shift(i).mul(&PolyMatrix::constant(&place))?;
            k = k.sub(&term)?;
        }
    }
    let g = generator(scheme, unit)?;
    if !g.mul(&k)?.is_zero() {
        return Err(PolyMatError::VerificationFailed("G·K is not zero".into()));
    }
    if k.coeff(0).rank() != outside.len() {
        return Err(PolyMatError::VerificationFailed("constant term of K is rank deficient".into()));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::polymat::right_invertible_general;

    fn s(t: &[&[usize]]) -> SelectionScheme {
        SelectionScheme::new(t.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn seven_point_illustration() {
        let f = Field::prime(29).unwrap();
        let unit = UnitScheme::fourier(&f, 7).unwrap();
        let sc = s(&[&[0, 1], &[2, 3], &[4, 5]]);
        let h = right_inverse_structured(&sc, &unit).unwrap();
        assert_eq!(h, PolyMatrix::constant(&unit.v().select_cols(&[0, 1])));
        let k = check_matrix(&sc, &unit).unwrap();
        // (f2,f3,f4,f5,f6) - (f0,f1,0,0,0) z - (0,0,f0,f1,0) z^2
        let v = unit.v();
        let z = Matrix::zeros(&f, 7, 1);
        let c = |j: usize| v.select_cols(&[j]);
        let want = PolyMatrix::from_blocks(vec![
            v.select_cols(&[2, 3, 4, 5, 6]),
            Matrix::hstack(&[&c(0), &c(1), &z, &z, &z]).unwrap().neg(),
            Matrix::hstack(&[&z, &z, &c(0), &c(1), &z]).unwrap().neg(),
        ])
        .unwrap();
        assert_eq!(k, want);
    }

    #[test]
    fn memory_three_with_shared_row() {
        let f = Field::prime(29).unwrap();
        let unit = UnitScheme::fourier(&f, 7).unwrap();
        let sc = s(&[&[0, 1], &[2, 3], &[4, 5], &[5, 6]]);
        let h = right_inverse_structured(&sc, &unit).unwrap();
        assert_eq!(h, PolyMatrix::constant(&unit.v().select_cols(&[0, 1])));
        let k = check_matrix(&sc, &unit).unwrap();
        assert_eq!(k.cols(), 5);
    }

    #[test]
    fn unique_row_with_acyclic_corrections() {
        let f = Field::prime(11).unwrap();
        let unit = UnitScheme::fourier(&f, 5).unwrap();
        let sc = s(&[&[0, 1], &[1, 2]]);
        let h = right_inverse_structured(&sc, &unit).unwrap();
        assert_eq!(h.degree(), Some(1));
        check_matrix(&sc, &unit).unwrap();
    }

    #[test]
    fn cyclic_corrections_are_refused() {
        // row 1 of E_0 recurs at position 1 of E_1: G e-row 1 = e_1 (1 + z), not invertible
        let f = Field::prime(11).unwrap();
        let unit = UnitScheme::fourier(&f, 5).unwrap();
        let sc = s(&[&[0, 1], &[2, 1]]);
        assert!(matches!(right_inverse_structured(&sc, &unit), Err(PolyMatError::ConditionNotMet(_))));
        let g = PolyMatrix::from_blocks(vec![unit.u().select_rows(&[0, 1]), unit.u().select_rows(&[2, 1])]).unwrap();
        assert!(right_invertible_general(&g).is_none());
    }

    #[test]
    fn correction_order_reports_cycle() {
        assert_eq!(correction_order(&s(&[&[0, 1, 2], &[3, 2, 1]])), Err(vec![1, 2]));
        assert_eq!(correction_order(&s(&[&[0, 1], &[1, 2]])), Ok(vec![0, 1]));
    }
}
