//! The reproduction table: every worked example the library is expected to
//! reproduce, run end to end and reported one row at a time.

use std::time::Instant;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::design::{
    block_scheme, build_generator, classify_selection, gsb, ConvCode, Selection, SelectionScheme, UnitScheme,
};
use crate::distance::{
    bounded_search, codeword_weight, encode, free_distance_bounds, free_distance_exact, pattern_lower_bound,
    DistanceOptions,
};
use crate::duality::{build_dual_containing, build_self_dual, certified_self_dual};
use crate::field::{make_field, Fe, Field};
use crate::groupring::{gr_inverse, ldpc_element, tanner_diagnostics, to_matrix, unit_from_element, GroupRingElement, GroupSpec};
use crate::matrix::{chebotarev_report, fourier_matrix, linear_min_distance, Matrix, LINEAR_DISTANCE_GUARD};
use crate::polymat::{check_matrix, right_inverse_structured, right_invertible_general};

/// Group names accepted by `only`, indexed by criterion number minus one.
pub const GROUPS: [&str; 10] =
    ["fourier", "chebotarev", "mds", "distance", "squeeze", "gsb", "noncatastrophic", "duality", "ldpc", "properties"];

#[derive(Debug, Clone, Serialize)]
pub struct ReproRow {
    pub criterion: usize,
    pub group: &'static str,
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct ReproOptions {
    pub seed: u64,
    /// Cases in the randomized property suite.
    pub cases: usize,
    pub distance: DistanceOptions,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions { seed: 20240917, cases: 200, distance: DistanceOptions::default() }
    }
}

/// Whether `filter` (a group name or criterion number) selects criterion `k`.
pub fn selects(filter: &str, k: usize) -> bool {
    filter == GROUPS[k - 1] || filter.parse::<usize>() == Ok(k)
}

pub fn run(only: Option<&str>, opts: &ReproOptions) -> Vec<ReproRow> {
    (1..=10).filter(|&k| only.is_none_or(|f| selects(f, k))).flat_map(|k| run_criterion(k, opts)).collect()
}

pub fn run_criterion(k: usize, opts: &ReproOptions) -> Vec<ReproRow> {
    let mut t = Table { k, rows: Vec::new() };
    match k {
        1 => fourier(&mut t),
        2 => chebotarev(&mut t),
        3 => mds(&mut t, opts.seed),
        4 => distances(&mut t, &opts.distance),
        5 => squeeze(&mut t, &opts.distance),
        6 => gsb_table(&mut t),
        7 => noncatastrophic(&mut t),
        8 => duality(&mut t),
        9 => ldpc(&mut t),
        10 => properties(&mut t, opts),
        _ => {}
    }
    t.rows
}

type Outcome = Result<(String, bool), String>;

struct Table {
    k: usize,
    rows: Vec<ReproRow>,
}

impl Table {
    fn row(&mut self, name: &str, expected: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (observed, pass) = match f() {
            Ok(x) => x,
            Err(e) => (format!("error: {e}"), false),
        };
        self.rows.push(ReproRow {
            criterion: self.k,
            group: GROUPS[self.k - 1],
            name: name.to_string(),
            expected: expected.to_string(),
            observed,
            pass,
            millis: start.elapsed().as_millis(),
        });
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn prime(p: u64) -> Result<Field, String> {
    Field::prime(p).map_err(err)
}

fn fourier_unit(f: &Field, n: usize) -> Result<UnitScheme, String> {
    UnitScheme::fourier(f, n).map_err(err)
}

fn code_of(unit: &UnitScheme, tuples: Vec<Vec<usize>>) -> Result<ConvCode, String> {
    let scheme = SelectionScheme::new(tuples).map_err(err)?;
    build_generator(unit, &scheme).map_err(err)
}

fn ints(row: &[Fe]) -> Vec<u32> {
    row.iter().map(|x| x.index()).collect()
}

fn binary_unit(group: GroupSpec, support: &[u32]) -> Matrix {
    let f = Field::prime(2).expect("2 is prime");
    to_matrix(&GroupRingElement::from_support(&f, group, support))
}

fn fourier(t: &mut Table) {
    t.row("F5 over GF(11) matches the displayed matrix", "rows 11111/14593/15349/19435/13954", || {
        let f = prime(11)?;
        let (u, _) = fourier_matrix(&f, 5).map_err(err)?;
        let shown: [[u32; 5]; 5] = [[1, 1, 1, 1, 1], [1, 4, 5, 9, 3], [1, 5, 3, 4, 9], [1, 9, 4, 3, 5], [1, 3, 9, 5, 4]];
        let ok = (0..5).all(|i| ints(u.row(i)) == shown[i]);
        Ok((format!("{:?}", (0..5).map(|i| ints(u.row(i))).collect_vec()), ok))
    });
    t.row("F11 over GF(23) row 1", "[1, 2, 4, 8, 16, 9, 18, 13, 3, 6, 12]", || {
        let (u, _) = fourier_matrix(&prime(23)?, 11).map_err(err)?;
        let row = ints(u.row(1));
        let ok = row == [1, 2, 4, 8, 16, 9, 18, 13, 3, 6, 12];
        Ok((format!("{row:?}"), ok))
    });
    t.row("F (n^-1 F*) = I for every constructed pair", "identity for all 6 pairs", || {
        let cases: Vec<(Field, usize)> = vec![
            (prime(7)?, 3),
            (prime(11)?, 5),
            (make_field(2, 4, None).map_err(err)?, 5),
            (prime(23)?, 11),
            (make_field(3, 6, None).map_err(err)?, 7),
            (prime(227)?, 113),
        ];
        let mut good = 0;
        for (f, n) in &cases {
            let (u, v) = fourier_matrix(f, *n).map_err(err)?;
            good += u.mul(&v).map_err(err)?.is_identity() as usize;
        }
        Ok((format!("{good}/{} identity", cases.len()), good == cases.len()))
    });
}

fn chebotarev(t: &mut Table) {
    let cases: [(&str, u64, u32, usize); 4] =
        [("F3 over GF(7)", 7, 1, 3), ("F5 over GF(11)", 11, 1, 5), ("F5 over GF(2^4)", 2, 4, 5), ("F11 over GF(23)", 23, 1, 11)];
    for (name, p, m, n) in cases {
        t.row(name, "every square submatrix nonsingular", || {
            let f = make_field(p, m, None).map_err(err)?;
            let (u, _) = fourier_matrix(&f, n).map_err(err)?;
            let rep = chebotarev_report(&u, n).map_err(err)?;
            Ok(match rep.failure {
                None => (format!("holds, {} minors", rep.minors), true),
                Some((rows, cols)) => (format!("singular minor rows {rows:?} cols {cols:?}"), false),
            })
        });
    }
}

fn mds(t: &mut Table, seed: u64) {
    for r in 1..=5 {
        t.row(&format!("F11 over GF(23), 20 random {r}-row subsets"), &format!("all distance {}", 12 - r), || {
            let (u, _) = fourier_matrix(&prime(23)?, 11).map_err(err)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ r as u64);
            let mut bad = Vec::new();
            for _ in 0..20 {
                let mut rows = sample(&mut rng, 11, r).into_vec();
                rows.sort_unstable();
                let d = linear_min_distance(&u.select_rows(&rows), LINEAR_DISTANCE_GUARD).map_err(err)?;
                if d != 12 - r {
                    bad.push(format!("{rows:?}->{d}"));
                }
            }
            Ok(if bad.is_empty() { ("20/20".into(), true) } else { (format!("{}/20, misses {}", 20 - bad.len(), bad.join(" ")), false) })
        });
    }
}

fn exact_row(t: &mut Table, name: &str, want: usize, opts: &DistanceOptions, build: impl FnOnce() -> Result<ConvCode, String>) {
    t.row(name, &want.to_string(), || {
        let code = build()?;
        let rep = free_distance_exact(&code, opts).map_err(err)?;
        let ok = rep.exact && rep.lower == want && rep.verify_witness(&code);
        Ok((format!("{} (trellis, witness checked: {})", rep.lower, rep.verify_witness(&code)), ok))
    });
}

fn distances(t: &mut Table, opts: &DistanceOptions) {
    exact_row(t, "(3,1,2;2) over GF(7)", 9, opts, || code_of(&fourier_unit(&prime(7)?, 3)?, vec![vec![0], vec![1], vec![2]]));
    exact_row(t, "(5,1,4;4) over GF(11)", 25, opts, || {
        code_of(&fourier_unit(&prime(11)?, 5)?, (0..5).map(|i| vec![i]).collect())
    });
    exact_row(t, "(5,2,2;1) over GF(11)", 8, opts, || code_of(&fourier_unit(&prime(11)?, 5)?, vec![vec![0, 1], vec![2, 3]]));
    t.row("(11,1,10;10) over GF(23), inputs of degree <= 3", ">= 121, weight-121 word at f = 1", || {
        let code = code_of(&fourier_unit(&prime(23)?, 11)?, (0..11).map(|i| vec![i]).collect())?;
        let one = codeword_weight(&encode(&code, &[vec![Fe::ONE]]));
        let o = DistanceOptions { max_degree: Some(3), support_cap: 4, ..opts.clone() };
        let out = bounded_search(&code, &o, 1, one).map_err(err)?;
        let lighter = out.best.as_ref().map(|(w, _)| *w);
        let ok = one == 121 && out.complete && lighter.is_none();
        let found = lighter.map_or("none".to_string(), |w| w.to_string());
        Ok((format!("f = 1 weighs {one}; lighter words: {found}; search complete: {}", out.complete), ok))
    });
    exact_row(t, "(4,2,2;1) over Z2 C4", 4, opts, || {
        build_self_dual(&binary_unit(GroupSpec::Cyclic { n: 4 }, &[1, 2, 3]), 2, None).map_err(err)
    });
    exact_row(t, "(8,4,4;1) over Z2 D8", 6, opts, || {
        let (unit, scheme) = dihedral_unit()?;
        build_generator(&unit, &scheme).map_err(err)
    });
    exact_row(t, "(8,6,6;1) over Z2 C8", 4, opts, || {
        build_dual_containing(&binary_unit(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6]), 4).map_err(err)
    });
}

/// The 1 + b + ba unit of Z2 D8 split into two 4-row blocks.
fn dihedral_unit() -> Result<(UnitScheme, SelectionScheme), String> {
    let g = GroupSpec::Dihedral { n: 4 };
    let u = binary_unit(g, &[0, g.element(0, 1), g.element(1, 1)]);
    let unit = UnitScheme::from_u(u).map_err(err)?.with_blocks(4).map_err(err)?;
    let scheme = block_scheme(&unit, &[vec![0], vec![1]]).map_err(err)?;
    Ok((unit, scheme))
}

fn eleven_point() -> Result<(ConvCode, UnitScheme), String> {
    let mut unit = fourier_unit(&prime(23)?, 11)?;
    unit.verify_chebotarev(11).map_err(err)?;
    let code = code_of(&unit, vec![(0..5).collect(), (5..10).collect()])?;
    Ok((code, unit))
}

fn squeeze(t: &mut Table, opts: &DistanceOptions) {
    t.row("(11,5,5;1) over GF(23)", "lower 14 and a weight-14 word", || {
        let (code, unit) = eleven_point()?;
        let rep = free_distance_bounds(&code, Some(&unit), opts).map_err(err)?;
        let ok = rep.exact && rep.lower == 14 && rep.verify_witness(&code);
        Ok((format!("lower {} ({:?}), upper {} ({:?})", rep.lower, rep.lower_source, rep.upper, rep.upper_source), ok))
    });
    t.row("(11,5,5;1) over GF(23), inputs of support >= 2", ">= 16", || {
        let (code, unit) = eleven_point()?;
        let bound = pattern_lower_bound(&code, Some(&unit), 2).unwrap_or(0);
        let o = DistanceOptions { max_degree: Some(opts.search_depth), ..opts.clone() };
        let out = bounded_search(&code, &o, 2, 16).map_err(err)?;
        let lighter = out.best.as_ref().map(|(w, _)| *w);
        let ok = bound >= 16 && lighter.is_none();
        let found = lighter.map_or("none".to_string(), |w| w.to_string());
        Ok((
            format!(
                "support-pattern bound {bound}; search to degree {}: lighter words {found}, {} blocks, complete {}",
                out.max_degree, out.work, out.complete
            ),
            ok,
        ))
    });
}

fn gsb_table(t: &mut Table) {
    let table: [((usize, usize, usize), usize); 12] = [
        ((5, 2, 2), 9),
        ((5, 2, 4), 14),
        ((5, 3, 3), 8),
        ((7, 3, 3), 12),
        ((7, 2, 4), 20),
        ((7, 2, 6), 27),
        ((11, 5, 5), 18),
        ((11, 4, 4), 19),
        ((11, 3, 6), 31),
        ((11, 4, 8), 30),
        ((11, 5, 10), 29),
        ((11, 2, 8), 54),
    ];
    for ((n, r, d), want) in table {
        t.row(&format!("gsb({n},{r},{d})"), &want.to_string(), || {
            let g = gsb(n, r, d);
            Ok((g.to_string(), g == want))
        });
    }
    t.row("gsb(n,1,n-1) = n^2", "n^2 for n = 2..=113", || {
        let bad: Vec<usize> = (2..=113).filter(|&n| gsb(n, 1, n - 1) != n * n).collect();
        Ok((if bad.is_empty() { "all equal".into() } else { format!("differs at {bad:?}") }, bad.is_empty()))
    });
}

fn certificates_row(t: &mut Table, name: &str, build: impl FnOnce() -> Result<(ConvCode, UnitScheme), String>) {
    t.row(name, "G H = I, general route agrees, G K = 0 with full-rank K_0", || {
        let (code, unit) = build()?;
        let scheme = code.scheme.clone().ok_or("code has no scheme")?;
        let g = code.generator();
        let structured = right_inverse_structured(&scheme, &unit);
        let h_ok = structured.as_ref().is_ok_and(|h| g.mul(h).is_ok_and(|p| p.is_identity()));
        let general = right_invertible_general(g).is_some();
        let k = check_matrix(&scheme, &unit).map_err(err)?;
        let k_ok = k.cols() == code.n - code.r && g.mul(&k).map_err(err)?.is_zero() && k.coeff(0).rank() == code.n - code.r;
        let h_text = match &structured {
            Ok(_) => format!("structured H verifies: {h_ok}"),
            Err(e) => format!("structured H: {e}"),
        };
        Ok((format!("{h_text}; general inverse exists: {general}; check matrix verifies: {k_ok}"), h_ok && general && k_ok))
    });
}

fn with_unit(unit: UnitScheme, tuples: Vec<Vec<usize>>) -> Result<(ConvCode, UnitScheme), String> {
    Ok((code_of(&unit, tuples)?, unit))
}

fn noncatastrophic(t: &mut Table) {
    certificates_row(t, "(3,1,2;2) over GF(7)", || with_unit(fourier_unit(&prime(7)?, 3)?, vec![vec![0], vec![1], vec![2]]));
    certificates_row(t, "(5,1,4;4) over GF(11)", || with_unit(fourier_unit(&prime(11)?, 5)?, (0..5).map(|i| vec![i]).collect()));
    certificates_row(t, "(5,2,2;1) over GF(11)", || with_unit(fourier_unit(&prime(11)?, 5)?, vec![vec![0, 1], vec![2, 3]]));
    certificates_row(t, "(11,1,10;10) over GF(23)", || with_unit(fourier_unit(&prime(23)?, 11)?, (0..11).map(|i| vec![i]).collect()));
    certificates_row(t, "(11,5,5;1) over GF(23)", || eleven_point().map(|(c, u)| (c, u)));
    certificates_row(t, "(4,2,2;1) over Z2 C4", || {
        let unit = UnitScheme::from_u(binary_unit(GroupSpec::Cyclic { n: 4 }, &[1, 2, 3])).map_err(err)?.with_blocks(2).map_err(err)?;
        let scheme = block_scheme(&unit, &[vec![0], vec![1]]).map_err(err)?;
        Ok((build_generator(&unit, &scheme).map_err(err)?, unit))
    });
    certificates_row(t, "(8,4,4;1) over Z2 D8", || {
        let (unit, scheme) = dihedral_unit()?;
        Ok((build_generator(&unit, &scheme).map_err(err)?, unit))
    });
    certificates_row(t, "(8,6,6;1) over Z2 C8", || {
        let unit = UnitScheme::from_u(binary_unit(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6])).map_err(err)?.with_blocks(2).map_err(err)?;
        let scheme = block_scheme(&unit, &[vec![0, 1, 2], vec![1, 2, 3]]).map_err(err)?;
        Ok((build_generator(&unit, &scheme).map_err(err)?, unit))
    });
    certificates_row(t, "7-point example over GF(3^6)", || {
        let f = make_field(3, 6, None).map_err(err)?;
        with_unit(fourier_unit(&f, 7)?, vec![vec![0, 1], vec![2, 3], vec![4, 5]])
    });
}

fn duality(t: &mut Table) {
    let opts = DistanceOptions::default();
    t.row("Z2 C4 (4,2,2;1) self-dual", "self-dual certificate, d_free 4", || {
        let code = build_self_dual(&binary_unit(GroupSpec::Cyclic { n: 4 }, &[1, 2, 3]), 2, None).map_err(err)?;
        let cert = code.certificates.duality.as_ref().is_some_and(|c| c.verify(&code));
        let d = free_distance_exact(&code, &opts).map_err(err)?.lower;
        Ok((format!("certificate verifies: {cert}, d_free {d}"), cert && d == 4))
    });
    t.row("Z2 D8 (8,4,4;1) self-dual", "self-dual certificate, d_free 6", || {
        let (unit, scheme) = dihedral_unit()?;
        let code = certified_self_dual(&unit, build_generator(&unit, &scheme).map_err(err)?).map_err(err)?;
        let cert = code.certificates.duality.as_ref().is_some_and(|c| c.verify(&code));
        let d = free_distance_exact(&code, &opts).map_err(err)?.lower;
        Ok((format!("certificate verifies: {cert}, d_free {d}"), cert && d == 6))
    });
    t.row("Z2 C8 4-block orders all self-dual", "24 of 24 certified", || {
        let u = binary_unit(GroupSpec::Cyclic { n: 8 }, &[0, 2, 6]);
        let mut good = 0;
        for p in (0..4).permutations(4) {
            let code = build_self_dual(&u, 4, Some(&p)).map_err(err)?;
            good += code.certificates.duality.as_ref().is_some_and(|c| c.verify(&code)) as usize;
        }
        Ok((format!("{good} of 24 certified"), good == 24))
    });
    let dual_containing = [
        ("Z2 C8 (8,6,6;1)", GroupSpec::Cyclic { n: 8 }, vec![0, 2, 6], 4),
        ("F C16 (16,14,14;1)", GroupSpec::Cyclic { n: 16 }, vec![1, 7, 8, 9, 15], 8),
    ];
    for (name, group, support, blocks) in dual_containing {
        t.row(&format!("{name} dual-containing"), "dual-containing certificate", || {
            let code = build_dual_containing(&binary_unit(group, &support), blocks).map_err(err)?;
            let cert = code.certificates.duality.as_ref().is_some_and(|c| c.verify(&code));
            Ok((format!("params {:?}, certificate verifies: {cert}", code.params()), cert))
        });
        t.row(&format!("{name} free distance"), "d_free 4 with a weight-4 witness", || {
            let code = build_dual_containing(&binary_unit(group, &support), blocks).map_err(err)?;
            let rep = free_distance_exact(&code, &opts).map_err(err)?;
            let w = rep.witness.clone().unwrap_or_default();
            Ok((format!("d_free {} (trellis), minimum-weight input {w:?}", rep.lower), rep.lower == 4))
        });
    }
}

fn ldpc(t: &mut Table) {
    let v = ldpc_element();
    let m = to_matrix(&v);
    t.row("v in Z2(C204 x C4) support", "9", || Ok((v.support().to_string(), v.support() == 9)));
    t.row("Tanner graph of the embedding", "column weight 9, no 4-cycles", || {
        let d = tanner_diagnostics(&m);
        let ok = d.column_weights.keys().eq([9].iter()) && !d.has_4cycle;
        Ok((format!("column weights {:?}, 4-cycle: {}", d.column_weights, d.has_4cycle), ok))
    });
    t.row("v is invertible", "inverse exists and v v^-1 = 1", || {
        let inv = gr_inverse(&v).ok_or("no inverse")?;
        let one = crate::groupring::gr_mul(&v, &inv).map_err(err)?.is_one();
        Ok((format!("inverse support {}, product is one: {one}", inv.support()), one))
    });
    t.row("A_i B_j over the 4 x 4 block grid", "delta_ij I_204", || {
        let unit = unit_from_element(&v, true).map_err(err)?;
        let mut bad = Vec::new();
        for i in 0..4 {
            let a = unit.u().block(204 * i, 0, 204, 816);
            for j in 0..4 {
                let p = a.mul(&unit.v().block(0, 204 * j, 816, 204)).map_err(err)?;
                if (i == j && !p.is_identity()) || (i != j && !p.is_zero()) {
                    bad.push((i, j));
                }
            }
        }
        Ok((if bad.is_empty() { "all 16 blocks match".into() } else { format!("mismatch at {bad:?}") }, bad.is_empty()))
    });
    t.row("(816,204,612;3) generator", "structured right inverse verifies", || {
        let unit = unit_from_element(&v, true).map_err(err)?.with_blocks(204).map_err(err)?;
        let scheme = block_scheme(&unit, &[vec![0], vec![1], vec![2], vec![3]]).map_err(err)?;
        let code = build_generator(&unit, &scheme).map_err(err)?;
        let h = right_inverse_structured(&scheme, &unit).map_err(err)?;
        let ok = code.generator().mul(&h).map_err(err)?.is_identity();
        Ok((format!("params {:?}, G H = I: {ok}", code.params()), ok && code.params() == (816, 204, 612, 3)))
    });
}

/// Lightest codeword by direct encoding of every input of degree at most `d`.
///
/// Returns `None` when the column distance over the same window is below the
/// best full weight, since then a longer input could still be lighter.
pub fn brute_force_distance(code: &ConvCode, limit: u64) -> Option<usize> {
    let f = code.field();
    let (r, n, mu) = (code.r, code.n, code.mu);
    let blocks: Vec<Matrix> = (0..=mu).map(|i| code.generator().coeff(i)).collect();
    let q = f.cardinality();
    let elems: Vec<Fe> = f.elements().collect();
    for d in mu.. {
        let digits = r * (d + 1);
        let total = q.checked_pow(digits as u32)?;
        if total > limit {
            return None;
        }
        let (mut full, mut column) = (usize::MAX, usize::MAX);
        let mut idx = vec![0usize; digits];
        let mut input = vec![vec![Fe::ZERO; r]; d + 1];
        for _ in 1..total {
            // odometer step; the all-zero input is skipped
            for x in idx.iter_mut() {
                *x += 1;
                if (*x as u64) < q {
                    break;
                }
                *x = 0;
            }
            if idx[..r].iter().all(|&x| x == 0) {
                continue;
            }
            for (k, a) in input.iter_mut().enumerate() {
                for (j, x) in a.iter_mut().enumerate() {
                    *x = elems[idx[k * r + j]];
                }
            }
            let mut w_all = 0;
            let mut w_window = 0;
            for t in 0..=d + mu {
                let mut c = vec![Fe::ZERO; n];
                for (i, b) in blocks.iter().enumerate() {
                    if t >= i && t - i <= d {
                        for (o, y) in c.iter_mut().zip(b.vec_mul(&input[t - i])) {
                            *o = f.add(*o, y);
                        }
                    }
                }
                let w = c.iter().filter(|x| !x.is_zero()).count();
                w_all += w;
                if t <= d {
                    w_window += w;
                }
            }
            full = full.min(w_all);
            column = column.min(w_window);
        }
        if column >= full {
            return Some(full);
        }
    }
    None
}

/// A field element where `G(λ)` loses rank, which rules out a polynomial right inverse.
fn rank_drop(code: &ConvCode) -> Option<Fe> {
    let f = code.field();
    let g = code.generator();
    f.elements().find(|&x| {
        let mut m = Matrix::zeros(f, code.r, code.n);
        let mut p = Fe::ONE;
        for b in g.blocks() {
            m = m.add(&b.scale(p)).expect("same shape");
            p = f.mul(p, x);
        }
        m.rank() < code.r
    })
}

struct Sample {
    code: ConvCode,
    unit: UnitScheme,
    kind: Selection,
}

fn random_sample(rng: &mut ChaCha8Rng) -> Sample {
    loop {
        let q = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let n = rng.gen_range(2..=6usize);
        let r = rng.gen_range(1..n);
        let mu = rng.gen_range(1..=2usize);
        if (q as f64).powi((r * mu) as i32) > 1e5 {
            continue;
        }
        let f = Field::prime(q).expect("prime");
        let u = Matrix::from_fn(&f, n, n, |_, _| f.element(rng.gen_range(0..q)).expect("in range"));
        let Ok(unit) = UnitScheme::from_u(u) else { continue };
        let tuples: Vec<Vec<usize>> = (0..=mu).map(|_| sample(rng, n, r).into_vec()).collect();
        let Ok(scheme) = SelectionScheme::new(tuples) else { continue };
        let kind = classify_selection(&scheme);
        if kind == Selection::Unknown {
            continue;
        }
        let Ok(code) = build_generator(&unit, &scheme) else { continue };
        if code.mu != mu {
            continue;
        }
        return Sample { code, unit, kind };
    }
}

fn properties(t: &mut Table, opts: &ReproOptions) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples: Vec<Sample> = (0..opts.cases).map(|_| random_sample(&mut rng)).collect();
    let cases = samples.len();
    let mut certified = Vec::new();
    let mut catastrophic = Vec::new();
    for s in samples {
        let mut code = s.code.clone();
        match code.certify(Some(&s.unit)) {
            Ok(_) => certified.push((code, s.unit)),
            Err(e) => catastrophic.push((s.code, s.kind, e.to_string())),
        }
    }
    t.row("random unit schemes: G H = I and G K = 0", &format!("{cases} of {cases}"), || {
        let mut text = format!("{} of {cases}", certified.len());
        if !catastrophic.is_empty() {
            let disjoint = catastrophic.iter().filter(|(_, k, _)| *k == Selection::Disjoint).count();
            let dropped = catastrophic.iter().filter(|(c, _, _)| rank_drop(c).is_some()).count();
            text += &format!(
                "; {} without a polynomial right inverse ({disjoint} disjoint), {dropped} of them confirmed by a rank drop of G at some z in the field",
                catastrophic.len()
            );
            if let Some((c, k, _)) = catastrophic.first() {
                text += &format!("; first: tuples {:?} ({k:?})", c.scheme.as_ref().map(|s| s.tuples()));
            }
        }
        Ok((text, catastrophic.is_empty()))
    });
    t.row("random unit schemes: lower bound <= d_free <= GSB", "all certified cases", || {
        let mut bad = Vec::new();
        for (code, unit) in &certified {
            let exact = free_distance_exact(code, &opts.distance).map_err(err)?.lower;
            let o = DistanceOptions { node_budget: 10_000, ..opts.distance.clone() };
            let lower = free_distance_bounds(code, Some(unit), &o).map_err(err)?.lower;
            if exact < lower || exact > gsb(code.n, code.r, code.delta) {
                bad.push(format!("{:?}: {exact} vs [{lower}, {}]", code.params(), gsb(code.n, code.r, code.delta)));
            }
        }
        Ok((if bad.is_empty() { format!("{} of {}", certified.len(), certified.len()) } else { bad.join("; ") }, bad.is_empty()))
    });
    t.row("random unit schemes: trellis = brute force", "equal wherever the enumeration is conclusive", || {
        let (mut compared, mut bad) = (0, Vec::new());
        for (code, _) in &certified {
            let Some(oracle) = brute_force_distance(code, 1_000_000) else { continue };
            compared += 1;
            let exact = free_distance_exact(code, &opts.distance).map_err(err)?.lower;
            if exact != oracle {
                bad.push(format!("{:?}: trellis {exact}, brute force {oracle}", code.params()));
            }
        }
        let text = format!("{compared} of {} compared, {} disagree {}", certified.len(), bad.len(), bad.join("; "));
        Ok((text.trim_end().to_string(), bad.is_empty() && compared > 0))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        assert!(selects("distance", 4));
        assert!(selects("4", 4));
        assert!(!selects("distance", 5));
        let rows = run(Some("gsb"), &ReproOptions::default());
        assert_eq!(rows.len(), 13);
        assert!(rows.iter().all(|r| r.pass && r.criterion == 6));
    }

    #[test]
    fn brute_force_agrees_on_known_codes() {
        let f = Field::prime(11).unwrap();
        let unit = UnitScheme::fourier(&f, 5).unwrap();
        let code = code_of(&unit, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(brute_force_distance(&code, 2_000_000), Some(8));
        let f = Field::prime(7).unwrap();
        let code = code_of(&UnitScheme::fourier(&f, 3).unwrap(), vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(brute_force_distance(&code, 1_000_000), Some(9));
    }
}
