//! Runs the reproduction table and prints one PASS/FAIL line per row and per
//! criterion. Rows listed in `KNOWN_FAILURES` are examples whose published
//! values do not hold; each is confirmed by an independent computation in
//! `discrepancy_oracles` below. Any other failure fails the test, and so does
//! a known failure that starts passing.

use std::collections::BTreeMap;

use unitcode::repro::{run_criterion, ReproOptions, ReproRow};

const KNOWN_FAILURES: &[(usize, &str)] = &[
    (2, "F11 over GF(23)"),
    (3, "F11 over GF(23), 20 random 3-row subsets"),
    (3, "F11 over GF(23), 20 random 4-row subsets"),
    (3, "F11 over GF(23), 20 random 5-row subsets"),
    (4, "(8,6,6;1) over Z2 C8"),
    (8, "Z2 C8 (8,6,6;1) free distance"),
    (8, "F C16 (16,14,14;1) free distance"),
    (10, "random unit schemes: G H = I and G K = 0"),
];

fn print(rows: &[ReproRow]) {
    for r in rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("  {status} [{}] {}: expected {}; observed {} ({} ms)", r.criterion, r.name, r.expected, r.observed, r.millis);
    }
}

#[test]
fn acceptance() {
    let opts = ReproOptions::default();
    let mut unexpected = Vec::new();
    let mut summary = BTreeMap::new();
    for k in 1..=10 {
        let rows = run_criterion(k, &opts);
        assert!(!rows.is_empty(), "criterion {k} produced no rows");
        print(&rows);
        let pass = rows.iter().all(|r| r.pass);
        println!("criterion {k:>2}: {}", if pass { "PASS" } else { "FAIL" });
        summary.insert(k, pass);
        for r in &rows {
            let known = KNOWN_FAILURES.contains(&(r.criterion, r.name.as_str()));
            if r.pass == known {
                unexpected.push(format!("[{}] {} pass={} known_failure={known}: {}", r.criterion, r.name, r.pass, r.observed));
            }
        }
    }
    println!("summary: {summary:?}");
    assert!(unexpected.is_empty(), "unexpected outcomes:\n{}", unexpected.join("\n"));
}

/// Independent confirmations of the documented failures: direct enumeration
/// with plain integer arithmetic, sharing no code with the library.
mod discrepancy_oracles {
    fn pow(b: u64, e: u64, p: u64) -> u64 {
        (0..e).fold(1, |acc, _| acc * b % p)
    }

    fn det(mut m: Vec<Vec<i64>>, p: i64) -> i64 {
        let n = m.len();
        let mut d = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| m[r][c].rem_euclid(p) != 0) else { return 0 };
            if piv != c {
                m.swap(piv, c);
                d = -d;
            }
            let inv = (0..p).find(|&x| (m[c][c] * x).rem_euclid(p) == 1).unwrap();
            d = d * m[c][c] % p;
            for r in c + 1..n {
                let fct = m[r][c] * inv % p;
                for k in c..n {
                    m[r][k] = (m[r][k] - fct * m[c][k]).rem_euclid(p);
                }
            }
        }
        d.rem_euclid(p)
    }

    #[test]
    fn eleven_point_fourier_has_a_singular_minor() {
        // every primitive 11th root of unity mod 23 gives some singular 3x3 minor
        for w in (2..23u64).filter(|&w| pow(w, 11, 23) == 1) {
            let f = |i: usize, j: usize| pow(w, (i * j) as u64, 23) as i64;
            let mut found = false;
            'outer: for rows in combos(11, 3) {
                for cols in combos(11, 3) {
                    let m = rows.iter().map(|&i| cols.iter().map(|&j| f(i, j)).collect()).collect();
                    if det(m, 23) == 0 {
                        found = true;
                        break 'outer;
                    }
                }
            }
            assert!(found, "omega = {w}");
        }
        let m = [0, 1, 3].iter().map(|&i| [0, 2, 6].iter().map(|&j| pow(2, i * j, 23) as i64).collect()).collect();
        assert_eq!(det(m, 23), 0);
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n).flat_map(|last| combos(last, k - 1).into_iter().map(move |mut c| {
            c.push(last);
            c
        }))
        .collect()
    }

    #[test]
    fn three_rows_of_the_eleven_point_matrix_reach_distance_eight() {
        let rows = [2u64, 3, 9];
        let mut best = 11;
        for a in 0..23u64 {
            for b in 0..23u64 {
                for c in 0..23u64 {
                    if a + b + c == 0 {
                        continue;
                    }
                    let w = (0..11u64)
                        .filter(|&j| (a * pow(2, rows[0] * j, 23) + b * pow(2, rows[1] * j, 23) + c * pow(2, rows[2] * j, 23)) % 23 != 0)
                        .count();
                    best = best.min(w);
                }
            }
        }
        assert_eq!(best, 8);
    }

    /// Circulant over GF(2) with first row `support`, as bit rows.
    fn circulant(n: usize, support: &[usize]) -> Vec<u64> {
        (0..n).map(|g| support.iter().fold(0u64, |acc, &s| acc ^ (1 << ((g + s) % n)))).collect()
    }

    /// Lightest word of `(B_0..B_{k-2}) + (B_1..B_{k-1}) z` over constant
    /// inputs; an upper bound on the free distance.
    fn sliding_window_constant_minimum(n: usize, support: &[usize], block: usize) -> u32 {
        let u = circulant(n, support);
        let r = n - block;
        (1u64..1 << r)
            .map(|s| {
                let pick = |off: usize| (0..r).filter(|i| s >> i & 1 == 1).fold(0u64, |acc, i| acc ^ u[i + off]);
                pick(0).count_ones() + pick(block).count_ones()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn cyclic_eight_code_has_a_weight_two_word() {
        assert_eq!(sliding_window_constant_minimum(8, &[0, 2, 6], 2), 2);
    }

    #[test]
    fn cyclic_sixteen_code_has_a_weight_two_word() {
        let u = circulant(16, &[1, 7, 8, 9, 15]);
        // u is an involution, so the unit is its own inverse
        for i in 0..16 {
            let sq = (0..16).filter(|&k| u[i] >> k & 1 == 1).fold(0u64, |acc, k| acc ^ u[k]);
            assert_eq!(sq, 1 << i);
        }
        assert_eq!(sliding_window_constant_minimum(16, &[1, 7, 8, 9, 15], 2), 2);
    }

    #[test]
    fn unique_row_is_not_enough_for_a_right_inverse() {
        // E_0 = (e0, e1), E_1 = (e2, e1) over the 5-point Fourier matrix mod 11:
        // at z = 10 the rows e0 + 10 e2 and e1 + 10 e1 = 0 leave rank 1
        let row = |i: u64| (0..5).map(|j| pow(4, i * j, 11) as i64).collect::<Vec<_>>();
        let z = 10;
        let g0: Vec<i64> = row(0).iter().zip(row(2)).map(|(a, b)| (a + z * b) % 11).collect();
        let g1: Vec<i64> = row(1).iter().map(|a| (a + z * a) % 11).collect();
        assert!(g1.iter().all(|&x| x == 0));
        assert!(g0.iter().any(|&x| x != 0));
    }
}
