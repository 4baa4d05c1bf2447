//! Group rings `F G` for cyclic, product-of-two-cyclic and dihedral groups,
//! their matrix embedding, and Tanner-graph checks for the resulting LDPC
//! matrices.
//!
//! Elements are indexed `j·n + i`: `g^i h^j` in `C_n × C_m` (so the matrix is
//! circulant-by-circulant, `C_m` outermost), `b^j a^i` in the dihedral group of
//! order `2n`, and plain `a^i` in `C_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::{DesignError, UnitProvenance, UnitScheme};
use crate::field::{Fe, Field, FieldSpec};
use crate::matrix::gf2::BitMatrix;
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupRingError {
    #[error("elements belong to different group rings")]
    GroupMismatch,
    #[error("unknown group {0:?}; expected Cn, CnxCm or D2n")]
    BadGroup(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic { n: u32 },
    Product { n: u32, m: u32 },
    /// Dihedral group of order `2n`, `b a = a^{-1} b`.
    Dihedral { n: u32 },
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match *self {
            GroupSpec::Cyclic { n } => n as usize,
            GroupSpec::Product { n, m } => (n * m) as usize,
            GroupSpec::Dihedral { n } => 2 * n as usize,
        }
    }

    fn base(&self) -> u32 {
        match *self {
            GroupSpec::Cyclic { n } | GroupSpec::Product { n, .. } | GroupSpec::Dihedral { n } => n,
        }
    }

    fn outer(&self) -> u32 {
        match *self {
            GroupSpec::Cyclic { .. } => 1,
            GroupSpec::Product { m, .. } => m,
            GroupSpec::Dihedral { .. } => 2,
        }
    }

    /// Index of `g^i h^j` (product), `b^j a^i` (dihedral) or `a^i` (cyclic, `j` ignored mod 1).
    pub fn element(&self, i: i64, j: i64) -> u32 {
        let (n, m) = (self.base() as i64, self.outer() as i64);
        (j.rem_euclid(m) * n + i.rem_euclid(n)) as u32
    }

    /// Exponents `(i, j)` of an element index.
    pub fn exponents(&self, x: u32) -> (u32, u32) {
        (x % self.base(), x / self.base())
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let n = self.base();
        let ((i, s), (k, t)) = (self.exponents(x), self.exponents(y));
        match *self {
            GroupSpec::Cyclic { .. } => (i + k) % n,
            GroupSpec::Product { m, .. } => ((s + t) % m) * n + (i + k) % n,
            GroupSpec::Dihedral { .. } => {
                // a^i b^t = b^t a^{(-1)^t i}
                let i = if t == 1 { (n - i) % n } else { i };
                ((s + t) % 2) * n + (i + k) % n
            }
        }
    }

    pub fn inv(&self, x: u32) -> u32 {
        let (i, s) = self.exponents(x);
        match *self {
            GroupSpec::Dihedral { .. } if s == 1 => x,
            _ => self.element(-(i as i64), -(s as i64)),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic { n } => write!(f, "C{n}"),
            GroupSpec::Product { n, m } => write!(f, "C{n}xC{m}"),
            GroupSpec::Dihedral { n } => write!(f, "D{}", 2 * n),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupRingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupRingError::BadGroup(s.to_string());
        let num = |t: &str| t.parse::<u32>().ok().filter(|&x| x > 0);
        if let Some(rest) = s.strip_prefix('D') {
            let order = num(rest).filter(|o| o % 2 == 0 && *o >= 2).ok_or_else(bad)?;
            return Ok(GroupSpec::Dihedral { n: order / 2 });
        }
        let rest = s.strip_prefix('C').ok_or_else(bad)?;
        match rest.split_once("xC") {
            Some((a, b)) => Ok(GroupSpec::Product { n: num(a).ok_or_else(bad)?, m: num(b).ok_or_else(bad)? }),
            None => Ok(GroupSpec::Cyclic { n: num(rest).ok_or_else(bad)? }),
        }
    }
}

/// Sparse element of `F G`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    field: Field,
    group: GroupSpec,
    coeffs: BTreeMap<u32, Fe>,
}

impl GroupRingElement {
    pub fn zero(field: &Field, group: GroupSpec) -> Self {
        GroupRingElement { field: field.clone(), group, coeffs: BTreeMap::new() }
    }

    pub fn one(field: &Field, group: GroupSpec) -> Self {
        Self::from_terms(field, group, [(0, Fe::ONE)])
    }

    /// Sum of `c·x` over the given terms; repeated elements accumulate.
    pub fn from_terms(field: &Field, group: GroupSpec, terms: impl IntoIterator<Item = (u32, Fe)>) -> Self {
        let mut e = Self::zero(field, group);
        for (x, c) in terms {
            assert!((x as usize) < group.order(), "group element {x} out of range");
            e.add_term(x, c);
        }
        e
    }

    /// Sum of the listed group elements with coefficient one.
    pub fn from_support(field: &Field, group: GroupSpec, support: &[u32]) -> Self {
        Self::from_terms(field, group, support.iter().map(|&x| (x, Fe::ONE)))
    }

    fn add_term(&mut self, x: u32, c: Fe) {
        let s = self.field.add(self.coeffs.get(&x).copied().unwrap_or(Fe::ZERO), c);
        if s.is_zero() {
            self.coeffs.remove(&x);
        } else {
            self.coeffs.insert(x, s);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn coeff(&self, x: u32) -> Fe {
        self.coeffs.get(&x).copied().unwrap_or(Fe::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Fe)> + '_ {
        self.coeffs.iter().map(|(&x, &c)| (x, c))
    }

    pub fn support(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0) == Fe::ONE
    }

    fn check(&self, other: &Self) -> Result<(), GroupRingError> {
        if self.group != other.group || self.field != other.field {
            return Err(GroupRingError::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check(other)?;
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, c);
        }
        Ok(out)
    }

    /// `(packed field element, [i, j])` pairs, the form stored in code cards.
    pub fn exponent_terms(&self) -> Vec<(u32, Vec<u32>)> {
        self.terms()
            .map(|(x, c)| {
                let (i, j) = self.group.exponents(x);
                (c.index(), vec![i, j])
            })
            .collect()
    }
}

pub fn gr_mul(a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, GroupRingError> {
    a.check(b)?;
    let f = &a.field;
    let mut out = GroupRingElement::zero(f, a.group);
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            out.add_term(a.group.mul(x, y), f.mul(c, d));
        }
    }
    Ok(out)
}

/// Coefficient of `g` moves to `g^{-1}`.
pub fn gr_transpose(a: &GroupRingElement) -> GroupRingElement {
    GroupRingElement::from_terms(&a.field, a.group, a.terms().map(|(x, c)| (a.group.inv(x), c)))
}

/// `|G| × |G|` matrix with entry `(g, h)` the coefficient of `g^{-1} h`.
pub fn to_matrix(a: &GroupRingElement) -> Matrix {
    let n = a.group.order();
    let mut m = Matrix::zeros(&a.field, n, n);
    for g in 0..n as u32 {
        for (k, c) in a.terms() {
            m.set(g as usize, a.group.mul(g, k) as usize, c);
        }
    }
    m
}

/// Inverse read off row 0 of the inverted embedding; `None` for zero divisors.
pub fn gr_inverse(a: &GroupRingElement) -> Option<GroupRingElement> {
    let inv = to_matrix(a).invert().ok()?;
    let b = GroupRingElement::from_terms(&a.field, a.group, (0..inv.cols()).map(|h| (h as u32, inv.get(0, h))));
    debug_assert!(gr_mul(a, &b).map(|p| p.is_one()).unwrap_or(false));
    Some(b)
}

/// Density and 4-cycle report for a parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TannerDiagnostics {
    pub rows: usize,
    pub cols: usize,
    /// weight -> number of columns with that weight
    pub column_weights: BTreeMap<usize, usize>,
    pub row_weights: BTreeMap<usize, usize>,
    /// Two columns share at least two nonzero rows.
    pub has_4cycle: bool,
}

pub fn tanner_diagnostics(m: &Matrix) -> TannerDiagnostics {
    // nonzero pattern as a GF(2) matrix
    let f2 = Field::prime(2).expect("2 is prime");
    let pattern = Matrix::from_fn(&f2, m.cols(), m.rows(), |c, r| if m.get(r, c).is_zero() { Fe::ZERO } else { Fe::ONE });
    let bits = BitMatrix::from_matrix(&pattern);
    let histogram = |ws: Vec<usize>| {
        let mut h = BTreeMap::new();
        for w in ws {
            *h.entry(w).or_insert(0) += 1;
        }
        h
    };
    let mut has_4cycle = false;
    'outer: for a in 0..bits.rows() {
        for b in a + 1..bits.rows() {
            let shared: u32 =
                bits.row_words(a).iter().zip(bits.row_words(b)).map(|(x, y)| (x & y).count_ones()).sum();
            if shared >= 2 {
                has_4cycle = true;
                break 'outer;
            }
        }
    }
    TannerDiagnostics {
        rows: m.rows(),
        cols: m.cols(),
        column_weights: histogram(bits.row_weights()),
        row_weights: histogram(bits.column_weights()),
        has_4cycle,
    }
}

/// Text form: a `group=C204xC4 field=2` header, then `coeff i j` lines.
pub fn write_element(a: &GroupRingElement) -> String {
    let mut s = format!("group={} field={}\n", a.group, a.field.spec());
    for (x, c) in a.terms() {
        let (i, j) = a.group.exponents(x);
        s.push_str(&format!("{} {} {}\n", c.index(), i, j));
    }
    s
}

pub fn parse_element(text: &str) -> Result<GroupRingElement, GroupRingError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(GroupRingError::Parse { line: 1, msg: "missing header".into() })?;
    let herr = |msg: String| GroupRingError::Parse { line: hline, msg };
    let mut group = None;
    let mut field = None;
    for kv in header.split_whitespace() {
        match kv.split_once('=') {
            Some(("group", g)) => group = Some(g.parse::<GroupSpec>()?),
            Some(("field", s)) => field = Some(FieldSpec::parse_field(s).map_err(|e| herr(e.to_string()))?),
            _ => return Err(herr(format!("unexpected header item {kv:?}"))),
        }
    }
    let group = group.ok_or_else(|| herr("header needs group=".into()))?;
    let field = field.ok_or_else(|| herr("header needs field=".into()))?;
    let mut e = GroupRingElement::zero(&field, group);
    for (line, l) in lines {
        let nums: Vec<i64> = l
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|err| GroupRingError::Parse { line, msg: err.to_string() })?;
        let (c, i, j) = match nums[..] {
            [c, i] => (c, i, 0),
            [c, i, j] => (c, i, j),
            _ => return Err(GroupRingError::Parse { line, msg: "expected `coeff g_exp [h_exp]`".into() }),
        };
        e.add_term(group.element(i, j), field.from_int(c));
    }
    Ok(e)
}

/// Unit scheme from a group ring element: `U` is its embedding, or with
/// `inverse` set `V` is its embedding and `U` that of its inverse.
pub fn unit_from_element(a: &GroupRingElement, inverse: bool) -> Result<UnitScheme, DesignError> {
    let m = to_matrix(a);
    let provenance = UnitProvenance::GroupRing { group: a.group.to_string(), support: a.exponent_terms(), inverse };
    let unit = if inverse {
        let b = gr_inverse(a).ok_or(DesignError::NotUnit)?;
        UnitScheme::new(to_matrix(&b), m)?
    } else {
        UnitScheme::from_u(m)?
    };
    Ok(unit.with_provenance(provenance))
}

/// Rebuild an element from the `(coefficient, [i, j])` terms stored in code cards.
pub fn element_from_terms(field: &Field, group: &str, terms: &[(u32, Vec<u32>)]) -> Result<GroupRingElement, GroupRingError> {
    let group: GroupSpec = group.parse()?;
    let mut e = GroupRingElement::zero(field, group);
    for (line, (c, exps)) in terms.iter().enumerate() {
        let bad = || GroupRingError::Parse { line: line + 1, msg: format!("bad term {c} {exps:?}") };
        let c = field.element(*c as u64).ok_or_else(bad)?;
        let (i, j) = match exps[..] {
            [i] => (i, 0),
            [i, j] => (i, j),
            _ => return Err(bad()),
        };
        e.add_term(group.element(i as i64, j as i64), c);
    }
    Ok(e)
}

/// The weight-9 element of `Z_2(C_204 × C_4)` whose embedding is the sparse
/// check side of the LDPC construction.
pub fn ldpc_element() -> GroupRingElement {
    let f = Field::prime(2).expect("2 is prime");
    let group = GroupSpec::Product { n: 204, m: 4 };
    let exps: [(i64, &[i64]); 4] = [(0, &[75]), (1, &[13, 111, 168]), (2, &[29, 34, 170]), (3, &[27, 180])];
    let support: Vec<u32> =
        exps.iter().flat_map(|&(j, is)| is.iter().map(move |&i| group.element(204 - i, j))).collect();
    GroupRingElement::from_support(&f, group, &support)
}

/// Distinct supports `S` of size `k` with `(Σ_{g∈S} g)^2 = 1`, for small groups over GF(2).
pub fn binary_involutions(group: GroupSpec, k: usize, limit: usize) -> Vec<GroupRingElement> {
    use itertools::Itertools;
    let f = Field::prime(2).expect("2 is prime");
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for s in (0..group.order() as u32).combinations(k) {
        let e = GroupRingElement::from_support(&f, group, &s);
        if gr_mul(&e, &e).is_ok_and(|p| p.is_one()) && seen.insert(s) {
            out.push(e);
            if out.len() >= limit {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn el(group: GroupSpec, s: &[u32]) -> GroupRingElement {
        GroupRingElement::from_support(&gf2(), group, s)
    }

    fn bits(rows: &[&str]) -> Matrix {
        let f = gf2();
        Matrix::from_fn(&f, rows.len(), rows[0].len(), |i, j| if rows[i].as_bytes()[j] == b'1' { Fe::ONE } else { Fe::ZERO })
    }

    #[test]
    fn cyclic_four_involution() {
        let g = GroupSpec::Cyclic { n: 4 };
        let u = el(g, &[1, 2, 3]);
        assert!(gr_mul(&u, &u).unwrap().is_one());
        assert_eq!(gr_transpose(&u), u);
        assert_eq!(gr_transpose(&el(g, &[1])), el(g, &[3]));
        assert_eq!(to_matrix(&u), bits(&["0111", "1011", "1101", "1110"]));
        assert_eq!(gr_inverse(&u), Some(u));
    }

    #[test]
    fn dihedral_eight_matches_display() {
        let g = GroupSpec::Dihedral { n: 4 };
        // 1 + b + ba
        let u = el(g, &[0, g.element(0, 1), g.element(1, 1)]);
        assert_eq!(gr_transpose(&u), u);
        // b·ba = a and ba·b = a^{-1} survive, so u^2 is not 1
        let a = |i| g.element(i, 0);
        assert_eq!(gr_mul(&u, &u).unwrap(), el(g, &[0, a(1), a(3)]));
        let want = bits(&[
            "10001100", "01001001", "00100011", "00010110", "11001000", "10010100", "00110010", "01100001",
        ]);
        assert_eq!(to_matrix(&u), want);
    }

    #[test]
    fn dihedral_relation() {
        let g = GroupSpec::Dihedral { n: 5 };
        let (a, b) = (g.element(1, 0), g.element(0, 1));
        assert_eq!(g.mul(b, a), g.mul(g.inv(a), b));
        assert_eq!(g.mul(b, b), 0);
        for x in 0..10 {
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn cyclic_eight_square() {
        let g = GroupSpec::Cyclic { n: 8 };
        let u = el(g, &[1, 4, 7]);
        assert_eq!(gr_mul(&u, &u).unwrap(), el(g, &[0, 2, 6]));
        assert_eq!(gr_transpose(&u), u);
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        let u = el(GroupSpec::Cyclic { n: 2 }, &[0, 1]);
        assert!(gr_inverse(&u).is_none());
    }

    #[test]
    fn identity_embeds_as_identity() {
        let g = GroupSpec::Product { n: 3, m: 2 };
        assert!(to_matrix(&GroupRingElement::one(&gf2(), g)).is_identity());
    }

    #[test]
    fn product_is_circulant_by_circulant() {
        let g = GroupSpec::Product { n: 3, m: 2 };
        let u = el(g, &[g.element(1, 0), g.element(2, 1)]);
        let m = to_matrix(&u);
        // blocks indexed by the C_2 coordinate; each block a 3x3 circulant
        for bi in 0..2 {
            for bj in 0..2 {
                let b = m.block(3 * bi, 3 * bj, 3, 3);
                for i in 0..3 {
                    for j in 0..3 {
                        assert_eq!(b.get(i, j), b.get(0, (j + 3 - i) % 3));
                    }
                }
            }
        }
    }

    #[test]
    fn tanner_small_cases() {
        let f = gf2();
        let d = tanner_diagnostics(&Matrix::identity(&f, 4));
        assert_eq!(d.column_weights, BTreeMap::from([(1, 4)]));
        assert_eq!(d.row_weights, BTreeMap::from([(1, 4)]));
        assert!(!d.has_4cycle);
        assert!(tanner_diagnostics(&bits(&["11", "11"])).has_4cycle);
    }

    #[test]
    fn text_round_trip() {
        let v = ldpc_element();
        let text = write_element(&v);
        assert!(text.starts_with("group=C204xC4 field=2\n"));
        assert_eq!(parse_element(&text).unwrap(), v);
        assert!(parse_element("group=Q8 field=2\n").is_err());
        assert!(parse_element("group=C4 field=2\n1 2 3 4\n").is_err());
    }

    #[test]
    fn ldpc_element_support() {
        assert_eq!(ldpc_element().support(), 9);
    }

    #[test]
    fn small_involution_search() {
        let found = binary_involutions(GroupSpec::Cyclic { n: 4 }, 3, 10);
        assert!(found.contains(&el(GroupSpec::Cyclic { n: 4 }, &[1, 2, 3])));
        for u in found {
            assert!(gr_mul(&u, &u).unwrap().is_one());
        }
    }
}
