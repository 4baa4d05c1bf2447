use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::report::pack_input;
use super::search::{bounded_search, SYMBOL_GUARD};
use super::trellis::free_distance_exact;
use super::{DistanceError, DistanceMethod, DistanceOptions, DistanceReport, LowerSource, UpperSource};
use crate::design::{gsb, ChebotarevStatus, ConvCode, UnitProvenance, UnitScheme};
use crate::matrix::{linear_min_distance, Matrix};

/// Pattern states beyond this are not explored.
const PATTERN_STATE_GUARD: u128 = 1 << 20;

/// A weight bound and whether it rests on an assumed (unchecked) property.
type Bound = (usize, bool);

/// Shortest cyclic interval of `0..n` containing every index in `rows`.
fn cyclic_span(rows: &[usize], n: usize) -> usize {
    let mut s: Vec<usize> = rows.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return 0;
    }
    // the span leaves out the largest cyclic gap
    let mut gap = s[0] + n - s[s.len() - 1];
    for w in s.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    n - gap + 1
}

/// Lower bound on the weight of any nonzero combination of the given rows of `U`.
///
/// Rows of a Fourier matrix inside a cyclic interval of length `L` evaluate
/// polynomials of degree `< L` at distinct points (up to a column scaling), so
/// the weight is at least `n + 1 - L`. With the Chebotarev property every set
/// of `k` rows gives `n + 1 - k`.
fn row_set_bound(unit: &UnitScheme, rows: &[usize]) -> Option<Bound> {
    let n = unit.n();
    let mut best: Option<Bound> = None;
    let mut offer = |b: Bound| {
        if best.is_none_or(|(w, assumed)| b.0 > w || (b.0 == w && assumed && !b.1)) {
            best = Some(b);
        }
    };
    if matches!(unit.provenance, UnitProvenance::Fourier { .. }) {
        offer(((n + 1).saturating_sub(cyclic_span(rows, n)).max(1), false));
    }
    if unit.chebotarev.usable() {
        let mut k = rows.to_vec();
        k.sort_unstable();
        k.dedup();
        offer(((n + 1).saturating_sub(k.len()).max(1), unit.chebotarev == ChebotarevStatus::Assumed));
    }
    best
}

/// Minimum distance of the block code spanned by `block`, enumerated when
/// `q^rows <= guard`; otherwise `fallback` or 1.
pub fn component_distance(block: &Matrix, fallback: Option<usize>, guard: u128) -> usize {
    match linear_min_distance(block, guard) {
        Ok(d) => d,
        Err(_) => fallback.unwrap_or(1),
    }
}

pub(super) fn component_bound(code: &ConvCode, unit: Option<&UnitScheme>, i: usize, guard: u128) -> Bound {
    let block = code.generator().coeff(i);
    if let Ok(d) = linear_min_distance(&block, guard) {
        return (d, false);
    }
    let rows = code.scheme.as_ref().map(|s| s.tuple(i).to_vec());
    match (unit, rows) {
        (Some(u), Some(rows)) => row_set_bound(u, &rows).unwrap_or((1, false)),
        _ => (1, false),
    }
}

/// Lower bound from the block weights of every input support pattern.
///
/// Needs the scheme's rows to be pairwise distinct across all tuples, so that
/// a block touching any nonzero input is nonzero and its weight is bounded by
/// the rows of the tuples it combines. Only inputs with at least
/// `min_support` nonzero coefficient blocks are counted.
pub fn pattern_lower_bound(code: &ConvCode, unit: Option<&UnitScheme>, min_support: usize) -> Option<usize> {
    pattern_bound(code, unit?, min_support).map(|(w, _)| w)
}

fn pattern_bound(code: &ConvCode, unit: &UnitScheme, min_support: usize) -> Option<Bound> {
    let scheme = code.scheme.as_ref()?;
    let mut seen = vec![false; code.n];
    for &x in scheme.tuples().iter().flatten() {
        if x >= code.n || seen[x] {
            return None;
        }
        seen[x] = true;
    }
    let mu = code.mu;
    let t = min_support.max(1);
    let states = (1u128 << mu.min(100)) * (t as u128 + 1);
    if states > PATTERN_STATE_GUARD {
        return None;
    }
    // window bit i set: α_{k-i} nonzero, bit 0 being the newest input
    let full = (1usize << (mu + 1)) - 1;
    let mut block: Vec<Option<Bound>> = vec![Some((0, false)); full + 1];
    for (mask, slot) in block.iter_mut().enumerate().skip(1) {
        let rows: Vec<usize> =
            (0..=mu).filter(|i| mask >> i & 1 == 1).flat_map(|i| scheme.tuple(i).iter().copied()).collect();
        *slot = row_set_bound(unit, &rows);
    }
    if block.iter().any(|b| b.is_none()) {
        return None;
    }
    let bw = |mask: usize| block[mask].expect("checked");
    let keep = (1usize << mu) - 1;

    // Dijkstra over (last μ input bits, min(support, t)); `None` is the terminal
    type State = Option<(usize, usize)>;
    let mut dist: HashMap<State, Bound> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let start: State = Some((1 & keep, 1.min(t)));
    let first = bw(1);
    dist.insert(start, first);
    heap.push(Reverse((first.0, first.1, start)));
    while let Some(Reverse((d, assumed, st))) = heap.pop() {
        if dist.get(&st).is_some_and(|&(old, _)| old < d) {
            continue;
        }
        let Some((w, count)) = st else {
            return Some((d, assumed));
        };
        let mut relax = |next: State, cost: Bound, heap: &mut BinaryHeap<_>| {
            let nd = (d + cost.0, assumed || cost.1);
            if dist.get(&next).is_none_or(|&(old, _)| nd.0 < old) {
                dist.insert(next, nd);
                heap.push(Reverse((nd.0, nd.1, next)));
            }
        };
        let last_nonzero = mu == 0 || w & 1 == 1;
        if count >= t && last_nonzero {
            // c_{L+j} still sees inputs α_L .. α_{L+j-μ}
            let mut tail = (0, false);
            for j in 1..=mu {
                let b = bw((w << j) & full);
                tail = (tail.0 + b.0, tail.1 || b.1);
            }
            relax(None, tail, &mut heap);
        }
        for bit in 0..=1usize {
            if mu == 0 && bit == 0 {
                continue;
            }
            let window = (w << 1 | bit) & full;
            let c = if bit == 1 { (count + 1).min(t) } else { count };
            relax(Some((window & keep, c)), bw(window), &mut heap);
        }
    }
    None
}

/// Rate 1/n, memory n-1, every row of a unit with nonzero minors used once:
/// each block combines at most n rows and a lone input meets every row.
fn full_row(code: &ConvCode, unit: Option<&UnitScheme>) -> Option<Bound> {
    let (scheme, unit) = (code.scheme.as_ref()?, unit?);
    if code.r != 1 || code.mu + 1 != code.n || !unit.chebotarev.usable() {
        return None;
    }
    let mut rows: Vec<usize> = scheme.tuples().iter().map(|t| t[0]).collect();
    rows.sort_unstable();
    (rows == (0..code.n).collect::<Vec<_>>()).then_some((code.n * code.n, unit.chebotarev == ChebotarevStatus::Assumed))
}

/// Bounds without the trellis: algebraic lower bounds and a bounded search
/// for a light codeword, with the generalized Singleton bound as fallback.
pub fn free_distance_bounds(
    code: &ConvCode,
    unit: Option<&UnitScheme>,
    opts: &DistanceOptions,
) -> Result<DistanceReport, DistanceError> {
    let (first, a0) = component_bound(code, unit, 0, opts.component_guard);
    let ((mut lower, mut assumed), mut lower_source) = if code.mu == 0 {
        ((first, a0), LowerSource::ComponentSum { first, last: 0 })
    } else {
        let (last, a1) = component_bound(code, unit, code.mu, opts.component_guard);
        ((first + last, a0 || a1), LowerSource::ComponentSum { first, last })
    };
    let mut offer = |b: Option<Bound>, source: LowerSource| {
        if let Some((w, a)) = b {
            if w > lower || (w == lower && assumed && !a) {
                (lower, assumed, lower_source) = (w, a, source);
            }
        }
    };
    offer(unit.and_then(|u| pattern_bound(code, u, 1)), LowerSource::SupportPattern);
    offer(full_row(code, unit), LowerSource::FullRow);

    let (mut upper, mut upper_source) =
        if code.r < code.n { (gsb(code.n, code.r, code.delta), UpperSource::Gsb) } else { (1, UpperSource::Gsb) };
    let mut witness = None;
    let mut work = 0;
    let symbols = (code.field().cardinality() as u128).checked_pow(code.r as u32).unwrap_or(u128::MAX);
    if symbols <= SYMBOL_GUARD && lower < upper {
        let out = bounded_search(code, opts, 1, upper + 1)?;
        work = out.work;
        if let Some((w, input)) = out.best {
            upper = w;
            upper_source = UpperSource::Witness;
            witness = Some(pack_input(&input));
        }
    }
    let lower = lower.max(1);
    Ok(DistanceReport {
        lower,
        lower_source,
        upper,
        upper_source,
        witness,
        exact: lower == upper,
        method: if upper_source == UpperSource::Witness { DistanceMethod::BoundedSearch } else { DistanceMethod::Algebraic },
        assumed,
        work,
    })
}

/// Exact free distance from the trellis when it fits the guards, bounds otherwise.
pub fn free_distance(code: &ConvCode, unit: Option<&UnitScheme>, opts: &DistanceOptions) -> Result<DistanceReport, DistanceError> {
    match free_distance_exact(code, opts) {
        Err(DistanceError::GuardExceeded { .. }) => free_distance_bounds(code, unit, opts),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{build_generator, SelectionScheme};
    use crate::field::Field;

    fn setup(p: u64, n: usize, t: Vec<Vec<usize>>) -> (ConvCode, UnitScheme) {
        let f = Field::prime(p).unwrap();
        let mut unit = UnitScheme::fourier(&f, n).unwrap();
        unit.verify_chebotarev(13).unwrap();
        let code = build_generator(&unit, &SelectionScheme::new(t).unwrap()).unwrap();
        (code, unit)
    }

    #[test]
    fn spans() {
        assert_eq!(cyclic_span(&[0, 1, 2], 7), 3);
        assert_eq!(cyclic_span(&[6, 0, 1], 7), 3);
        assert_eq!(cyclic_span(&[0, 3], 7), 4);
        assert_eq!(cyclic_span(&[2], 7), 1);
    }

    #[test]
    fn pattern_bound_for_eleven_point_code() {
        // no Chebotarev property here; consecutive rows carry the bound
        let (code, unit) = setup(23, 11, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);
        assert_eq!(unit.chebotarev, ChebotarevStatus::VerifiedFalse);
        assert_eq!(pattern_lower_bound(&code, Some(&unit), 1), Some(14));
        assert_eq!(pattern_lower_bound(&code, Some(&unit), 2), Some(16));
        assert_eq!(pattern_lower_bound(&code, Some(&unit), 3), Some(18));
    }

    #[test]
    fn pattern_bound_full_row() {
        let (code, unit) = setup(7, 3, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(pattern_lower_bound(&code, Some(&unit), 1), Some(9));
        assert_eq!(full_row(&code, Some(&unit)), Some((9, false)));
    }

    #[test]
    fn pattern_bound_needs_distinct_rows() {
        let (code, unit) = setup(11, 5, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(pattern_lower_bound(&code, Some(&unit), 1), None);
        assert_eq!(pattern_lower_bound(&code, None, 1), None);
    }

    #[test]
    fn bounds_bracket_the_trellis_value() {
        for t in [
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![0, 4], vec![2, 3], vec![1, 0]],
            vec![vec![0], vec![2], vec![4], vec![1]],
        ] {
            let (code, unit) = setup(11, 5, t);
            let exact = free_distance_exact(&code, &DistanceOptions::default()).unwrap().lower;
            let opts = DistanceOptions { component_guard: 1, ..DistanceOptions::default() };
            let rep = free_distance_bounds(&code, Some(&unit), &opts).unwrap();
            assert!(rep.is_consistent());
            assert!(rep.lower <= exact && exact <= rep.upper, "{rep:?} vs {exact}");
            assert!(rep.verify_witness(&code));
        }
    }

    #[test]
    fn component_distance_fallback() {
        let f = Field::prime(11).unwrap();
        let unit = UnitScheme::fourier(&f, 5).unwrap();
        let block = unit.u().select_rows(&[0, 1, 2]);
        assert_eq!(component_distance(&block, None, u128::MAX), 3);
        assert_eq!(component_distance(&block, Some(3), 10), 3);
        assert_eq!(component_distance(&block, None, 10), 1);
        assert_eq!(row_set_bound(&unit, &[0, 1, 2]), Some((3, false)));
        assert_eq!(row_set_bound(&unit, &[0, 2]), Some((3, false)));
    }
}
