use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{DesignError, UnitScheme};

/// Row tuples `(E_0, ..., E_s)`; `G[z] = E_0 + E_1 z + ... + E_s z^s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SelectionScheme {
    tuples: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    /// No row of `E_0` occurs in any later tuple.
    Disjoint,
    /// Some row of `E_0` occurs in no later tuple.
    UniqueRow,
    Unknown,
}

impl SelectionScheme {
    pub fn new(tuples: Vec<Vec<usize>>) -> Result<SelectionScheme, DesignError> {
        let r = tuples.first().map_or(0, |t| t.len());
        if r == 0 {
            return Err(DesignError::InvalidScheme("scheme needs at least one nonempty tuple".into()));
        }
        for t in &tuples {
            if t.len() != r {
                return Err(DesignError::InvalidScheme(format!("tuple {t:?} does not have {r} rows")));
            }
            if t.iter().collect::<HashSet<_>>().len() != r {
                return Err(DesignError::InvalidScheme(format!("tuple {t:?} repeats a row")));
            }
        }
        Ok(SelectionScheme { tuples })
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    /// Rows per tuple.
    pub fn r(&self) -> usize {
        self.tuples[0].len()
    }

    /// Memory: the top power of z.
    pub fn mu(&self) -> usize {
        self.tuples.len() - 1
    }

    pub fn delta(&self) -> usize {
        self.r() * self.mu()
    }

    pub fn max_index(&self) -> usize {
        self.tuples.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn check_indices(&self, n: usize) -> Result<(), DesignError> {
        match self.tuples.iter().flatten().find(|&&i| i >= n) {
            Some(&i) => Err(DesignError::IndexOutOfRange { index: i, n }),
            None if self.r() > n => Err(DesignError::InfeasibleRate { r: self.r(), n }),
            None => Ok(()),
        }
    }

    /// Apply one permutation of rows to every tuple: tuple position `t` moves to `perm[t]`.
    pub fn permute_within(&self, perm: &[usize]) -> SelectionScheme {
        let tuples = self
            .tuples
            .iter()
            .map(|t| {
                let mut out = vec![0; t.len()];
                for (k, &x) in t.iter().enumerate() {
                    out[perm[k]] = x;
                }
                out
            })
            .collect();
        SelectionScheme { tuples }
    }
}

impl TryFrom<Vec<Vec<usize>>> for SelectionScheme {
    type Error = DesignError;
    fn try_from(v: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        SelectionScheme::new(v)
    }
}

impl From<SelectionScheme> for Vec<Vec<usize>> {
    fn from(s: SelectionScheme) -> Self {
        s.tuples
    }
}

pub fn classify_selection(scheme: &SelectionScheme) -> Selection {
    let later: HashSet<usize> = scheme.tuples[1..].iter().flatten().copied().collect();
    let e0 = &scheme.tuples[0];
    if e0.iter().all(|i| !later.contains(i)) {
        Selection::Disjoint
    } else if e0.iter().any(|i| !later.contains(i)) {
        Selection::UniqueRow
    } else {
        Selection::Unknown
    }
}

/// Expand tuples of block indices into row tuples using the unit's block partition.
pub fn block_scheme(unit: &UnitScheme, blocks: &[Vec<usize>]) -> Result<SelectionScheme, DesignError> {
    let b = unit.block_size().ok_or(DesignError::NoBlockPartition)?;
    let count = unit.n() / b;
    let mut tuples = Vec::with_capacity(blocks.len());
    for t in blocks {
        let mut rows = Vec::with_capacity(t.len() * b);
        for &k in t {
            if k >= count {
                return Err(DesignError::IndexOutOfRange { index: k, n: count });
            }
            rows.extend(k * b..(k + 1) * b);
        }
        tuples.push(rows);
    }
    SelectionScheme::new(tuples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::Matrix;

    fn s(t: &[&[usize]]) -> SelectionScheme {
        SelectionScheme::new(t.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify_selection(&s(&[&[0, 1], &[2, 3], &[4, 5]])), Selection::Disjoint);
        assert_eq!(classify_selection(&s(&[&[0, 1], &[2, 3], &[4, 5], &[5, 6]])), Selection::Disjoint);
        assert_eq!(classify_selection(&s(&[&[0, 1], &[1, 2]])), Selection::UniqueRow);
        assert_eq!(classify_selection(&s(&[&[0, 1], &[1, 0]])), Selection::Unknown);
        assert_eq!(classify_selection(&s(&[&[0, 1]])), Selection::Disjoint);
    }

    #[test]
    fn parameters() {
        let sc = s(&[&[0, 1], &[2, 3], &[4, 5]]);
        assert_eq!((sc.r(), sc.mu(), sc.delta()), (2, 2, 4));
        assert!(SelectionScheme::new(vec![vec![0, 0]]).is_err());
        assert!(SelectionScheme::new(vec![vec![0, 1], vec![2]]).is_err());
        assert!(matches!(sc.check_indices(5), Err(DesignError::IndexOutOfRange { index: 5, n: 5 })));
    }

    #[test]
    fn blocks_expand_to_rows() {
        let f = Field::prime(2).unwrap();
        let unit = UnitScheme::new(Matrix::identity(&f, 6), Matrix::identity(&f, 6)).unwrap();
        assert!(matches!(block_scheme(&unit, &[vec![0]]), Err(DesignError::NoBlockPartition)));
        let unit = unit.with_blocks(2).unwrap();
        let sc = block_scheme(&unit, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(sc.tuples(), &[vec![0, 1, 2, 3], vec![2, 3, 4, 5]]);
    }

    #[test]
    fn serde_shape() {
        let sc = s(&[&[0, 1], &[2, 3]]);
        assert_eq!(serde_json::to_string(&sc).unwrap(), "[[0,1],[2,3]]");
        assert!(serde_json::from_str::<SelectionScheme>("[[0,1],[2]]").is_err());
    }
}
