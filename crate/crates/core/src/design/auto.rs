use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use super::{DesignError, SelectionScheme, UnitScheme};

/// Deterministic scheme of `mu + 1` tuples with row 0 reserved for `E_0`.
///
/// `E_0 = (0, ..., r-1)`. Each later tuple is, in order of preference: the
/// first r-subset of `{1, ..., n-1}` disjoint from every row used so far; the
/// first r-subset not yet used; the first unused reordering of an earlier
/// `E_i` (i >= 1); a repeat of the earlier tuples in turn.
pub fn auto_design(unit: &UnitScheme, r: usize, mu: usize) -> Result<SelectionScheme, DesignError> {
    let n = unit.n();
    if r == 0 || r >= n {
        return Err(DesignError::InfeasibleRate { r, n });
    }
    let e0: Vec<usize> = (0..r).collect();
    let mut used_rows: HashSet<usize> = e0.iter().copied().collect();
    let mut later: Vec<Vec<usize>> = Vec::new();
    let mut distinct: Option<usize> = None;
    for _ in 0..mu {
        let used_sets: HashSet<BTreeSet<usize>> = later.iter().map(|t| t.iter().copied().collect()).collect();
        let subsets = || (1..n).combinations(r);
        // the least disjoint subset is simply the r smallest free rows
        let free: Vec<usize> = (1..n).filter(|i| !used_rows.contains(i)).take(r).collect();
        let pick = (free.len() == r)
            .then_some(free)
            .or_else(|| subsets().find(|c| !used_sets.contains(&c.iter().copied().collect())))
            .or_else(|| {
                later.iter().find_map(|t| {
                    t.iter().copied().permutations(r).find(|p| p != t && !later.contains(p))
                })
            })
            .unwrap_or_else(|| {
                let base = *distinct.get_or_insert(later.len());
                later[(later.len() - base) % base].clone()
            });
        used_rows.extend(pick.iter().copied());
        later.push(pick);
    }
    let mut tuples = vec![e0];
    tuples.extend(later);
    SelectionScheme::new(tuples)
}
