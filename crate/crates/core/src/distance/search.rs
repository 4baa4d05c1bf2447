//! Depth-first branch and bound over input polynomials `u(z) = Σ α_k z^k`.
//!
//! `α_0 != 0` with its first nonzero coordinate scaled to 1. Output block
//! `c_k = Σ_i α_{k-i} E_i` is final once `α_k` is chosen. Any continuation
//! still owes the last block `α_L E_μ`, which weighs at least `d(E_μ)`, so a
//! branch is cut when the accumulated weight plus `d(E_μ)` reaches the best.

use super::{DistanceError, DistanceOptions};
use crate::design::ConvCode;
use crate::field::{Fe, Field};
use crate::matrix::{linear_min_distance, weight, Matrix};

/// Refuse searches with more than this many input symbols q^r.
pub const SYMBOL_GUARD: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Lightest word found below the starting bound, with its input.
    pub best: Option<(usize, Vec<Vec<Fe>>)>,
    /// No lighter word exists within the degree and support limits.
    pub complete: bool,
    /// Output blocks evaluated.
    pub work: u64,
    pub max_degree: usize,
}

struct Search<'a> {
    f: &'a Field,
    blocks: Vec<Matrix>,
    r: usize,
    n: usize,
    mu: usize,
    max_degree: usize,
    min_support: usize,
    support_cap: usize,
    d_last: usize,
    budget: u64,
    work: u64,
    complete: bool,
    best: usize,
    best_input: Option<Vec<Vec<Fe>>>,
    alphas: Vec<Vec<Fe>>,
}

/// Advance `v` to the next vector in packed-index order; false after wrapping to zero.
fn next_vector(f: &Field, v: &mut [Fe]) -> bool {
    let q = f.cardinality();
    for x in v.iter_mut() {
        let i = x.index() as u64 + 1;
        if i < q {
            *x = f.element(i).expect("in range");
            return true;
        }
        *x = Fe::ZERO;
    }
    false
}

fn add_into(f: &Field, acc: &mut [Fe], v: &[Fe]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, b);
    }
}

impl Search<'_> {
    /// `Σ_{i >= lo} α_{k-i} E_i`, with α beyond the current prefix treated as zero.
    fn partial_block(&self, k: usize, lo: usize) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.n];
        for i in lo..=self.mu {
            if i > k {
                break;
            }
            if let Some(a) = self.alphas.get(k - i) {
                if a.iter().any(|x| !x.is_zero()) {
                    add_into(self.f, &mut out, &self.blocks[i].vec_mul(a));
                }
            }
        }
        out
    }

    fn support(&self) -> usize {
        self.alphas.iter().filter(|a| a.iter().any(|x| !x.is_zero())).count()
    }

    fn record(&mut self, total: usize) {
        if total < self.best {
            self.best = total;
            let mut input = self.alphas.clone();
            while input.last().is_some_and(|a| a.iter().all(|x| x.is_zero())) {
                input.pop();
            }
            self.best_input = Some(input);
        }
    }

    fn visit(&mut self, acc: usize) {
        let k = self.alphas.len();
        let support = self.support();
        if self.alphas[k - 1].iter().any(|x| !x.is_zero()) && support >= self.min_support {
            // stop here: the tail blocks c_k .. c_{k-1+μ}
            let tail: usize = (k..k + self.mu).map(|t| weight(&self.partial_block(t, 0))).sum();
            self.record(acc + tail);
        }
        if support >= self.support_cap || k > self.max_degree || acc + self.d_last >= self.best {
            return;
        }
        let base = self.partial_block(k, 1);
        let mut a = vec![Fe::ZERO; self.r];
        loop {
            let is_zero = a.iter().all(|x| x.is_zero());
            // a zero block only helps if something nonzero can still follow
            if !(is_zero && k >= self.max_degree) {
                self.work += 1;
                if self.work > self.budget {
                    self.complete = false;
                    return;
                }
                let mut c = base.clone();
                if !is_zero {
                    add_into(self.f, &mut c, &self.blocks[0].vec_mul(&a));
                }
                let w = acc + weight(&c);
                if w + self.d_last < self.best {
                    self.alphas.push(a.clone());
                    self.visit(w);
                    self.alphas.pop();
                    if !self.complete {
                        return;
                    }
                }
            }
            if !next_vector(self.f, &mut a) {
                break;
            }
        }
    }
}

/// Search inputs of degree <= max_degree and support in `[min_support, support_cap]`
/// for a codeword lighter than `bound`.
pub fn bounded_search(
    code: &ConvCode,
    opts: &DistanceOptions,
    min_support: usize,
    bound: usize,
) -> Result<SearchOutcome, DistanceError> {
    let f = code.field();
    let r = code.r;
    let q = f.cardinality() as u128;
    let symbols = q.checked_pow(r as u32).unwrap_or(u128::MAX);
    if symbols > SYMBOL_GUARD {
        return Err(DistanceError::GuardExceeded { what: "input symbols", needed: symbols, guard: SYMBOL_GUARD });
    }
    let blocks: Vec<Matrix> = (0..=code.mu).map(|i| code.generator().coeff(i)).collect();
    let last = &blocks[code.mu];
    let d_last = if code.mu == 0 {
        0
    } else {
        linear_min_distance(last, opts.component_guard).unwrap_or(1)
    };
    let max_degree = opts.max_degree.unwrap_or(code.mu + opts.search_depth);
    let mut s = Search {
        f,
        blocks,
        r,
        n: code.n,
        mu: code.mu,
        max_degree,
        min_support: min_support.max(1),
        support_cap: opts.support_cap.max(1),
        d_last,
        budget: opts.node_budget,
        work: 0,
        complete: true,
        best: bound,
        best_input: None,
        alphas: Vec::new(),
    };
    if s.min_support > s.support_cap {
        return Ok(SearchOutcome { best: None, complete: true, work: 0, max_degree });
    }
    // α_0 ranges over vectors whose first nonzero coordinate is 1
    let mut a0 = vec![Fe::ZERO; r];
    let mut first: Vec<(usize, Vec<Fe>)> = Vec::new();
    while next_vector(f, &mut a0) {
        if a0.iter().find(|x| !x.is_zero()) == Some(&Fe::ONE) {
            let c0 = s.blocks[0].vec_mul(&a0);
            first.push((weight(&c0), a0.clone()));
        }
    }
    // support-one words first: they are cheap and usually set a strong bound
    if s.min_support <= 1 {
        for (w0, a) in &first {
            s.alphas.push(a.clone());
            let tail: usize = (1..=s.mu).map(|t| weight(&s.partial_block(t, 0))).sum();
            s.record(w0 + tail);
            s.alphas.pop();
            s.work += 1;
        }
    }
    for (w0, a) in first {
        if w0 + s.d_last >= s.best {
            continue;
        }
        s.alphas.push(a);
        s.visit(w0);
        s.alphas.pop();
        if !s.complete {
            break;
        }
    }
    let best = s.best_input.map(|input| (s.best, input));
    Ok(SearchOutcome { best, complete: s.complete, work: s.work, max_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{build_generator, SelectionScheme, UnitScheme};
    use crate::distance::{codeword_weight, encode, free_distance_exact};

    fn code(p: u64, n: usize, t: Vec<Vec<usize>>) -> ConvCode {
        let f = Field::prime(p).unwrap();
        let unit = UnitScheme::fourier(&f, n).unwrap();
        build_generator(&unit, &SelectionScheme::new(t).unwrap()).unwrap()
    }

    #[test]
    fn finds_the_free_distance_of_small_codes() {
        for c in [
            code(11, 5, vec![vec![0, 1], vec![2, 3]]),
            code(7, 3, vec![vec![0], vec![1], vec![2]]),
            code(11, 5, vec![vec![0, 1], vec![1, 2]]),
        ] {
            let exact = free_distance_exact(&c, &DistanceOptions::default()).unwrap().lower;
            let out = bounded_search(&c, &DistanceOptions::default(), 1, usize::MAX).unwrap();
            let (w, input) = out.best.unwrap();
            assert!(out.complete);
            assert_eq!(w, exact);
            assert_eq!(codeword_weight(&encode(&c, &input)), w);
        }
    }

    #[test]
    fn bound_excludes_heavier_words() {
        let c = code(11, 5, vec![vec![0, 1], vec![2, 3]]);
        let out = bounded_search(&c, &DistanceOptions::default(), 1, 8).unwrap();
        assert!(out.best.is_none());
        assert!(out.complete);
    }

    #[test]
    fn budget_marks_incomplete() {
        let c = code(11, 5, vec![vec![0, 1], vec![2, 3]]);
        let opts = DistanceOptions { node_budget: 10, ..DistanceOptions::default() };
        let out = bounded_search(&c, &opts, 2, usize::MAX).unwrap();
        assert!(!out.complete);
    }
}
