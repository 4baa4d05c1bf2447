use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use itertools::Itertools;
use serde_json::{json, Value};
use unitcode::card::CodeCard;
use unitcode::design::{auto_design, block_scheme, build_generator, ConvCode, SelectionScheme, UnitProvenance, UnitScheme};
use unitcode::distance::{free_distance, support_profile, DistanceOptions, DistanceReport};
use unitcode::duality::{build_dual_containing, build_self_dual, certified_self_dual, DualityError};
use unitcode::field::{root_of_unity, FieldSpec};
use unitcode::groupring::{
    element_from_terms, ldpc_element, parse_element, tanner_diagnostics, to_matrix, unit_from_element, write_element,
    GroupRingElement,
};
use unitcode::matrix::text::{parse_matrix, write_matrix};
use unitcode::matrix::{chebotarev_report, fourier_matrix};
use unitcode::polymat::PolyMatrix;
use unitcode::repro::{run, ReproOptions};
use unitcode::{Field, Matrix};

use crate::error::CliError;
use crate::{DistanceArgs, GroupArgs, UnitArgs};

type Outcome = Result<bool, CliError>;

/// Largest Fourier length whose Chebotarev property is checked during design.
const CHEBOTAREV_VERIFY_UP_TO: usize = 11;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        println!("{value}");
    } else {
        println!("{}", text());
    }
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_card(path: &Path) -> Result<CodeCard, CliError> {
    Ok(CodeCard::from_json(&read(path)?)?)
}

fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| input(format!("bad index {t:?} in {s:?}")))).collect()
}

pub fn parse_scheme(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split('/').map(parse_list).collect()
}

fn distance_options(d: &DistanceArgs) -> DistanceOptions {
    DistanceOptions {
        state_guard: d.guard_states,
        search_depth: d.depth,
        support_cap: d.support_cap,
        node_budget: d.node_budget,
        ..DistanceOptions::default()
    }
}

fn params_text(code: &ConvCode) -> String {
    format!("({},{},{};{})", code.n, code.r, code.delta, code.mu)
}

fn distance_text(d: &DistanceReport) -> String {
    let assumed = if d.assumed { ", relies on an assumed Chebotarev property" } else { "" };
    if d.exact {
        format!("d_free = {} ({:?}{assumed})", d.lower, d.method)
    } else {
        format!("{} <= d_free <= {} ({:?} / {:?}{assumed})", d.lower, d.upper, d.lower_source, d.upper_source)
    }
}

pub fn field(spec: &str, json: bool) -> Outcome {
    let f = FieldSpec::parse_field(spec)?;
    let g = f.primitive_element();
    emit(
        json,
        json!({
            "spec": f.spec().to_string(),
            "characteristic": f.characteristic(),
            "degree": f.degree(),
            "cardinality": f.cardinality(),
            "modulus": f.modulus(),
            "primitive_element": f.format(g),
        }),
        || {
            format!(
                "GF({}^{}) with {} elements, modulus {:?}, primitive element {}",
                f.characteristic(),
                f.degree(),
                f.cardinality(),
                f.modulus(),
                f.format(g)
            )
        },
    );
    Ok(true)
}

/// Fourier unit from `--fourier` with `--field`, or the theorem-backed field otherwise.
fn fourier_unit(args: &UnitArgs, verify_up_to: usize) -> Result<UnitScheme, CliError> {
    let n = args.fourier.ok_or_else(|| input("--fourier N is required"))?;
    match (&args.field, args.germain) {
        (Some(_), true) => Err(input("--field and --germain are exclusive")),
        (Some(spec), false) => {
            let f = FieldSpec::parse_field(spec)?;
            let mut unit = UnitScheme::fourier(&f, n)?;
            if n <= verify_up_to {
                unit.verify_chebotarev(verify_up_to)?;
            }
            Ok(unit)
        }
        (None, germain) => {
            let q = germain.then_some(2 * n as u64 + 1);
            Ok(UnitScheme::fourier_for_length(n, q, verify_up_to)?)
        }
    }
}

pub fn fourier(args: &UnitArgs, json: bool) -> Outcome {
    let unit = fourier_unit(args, 0)?;
    let f = unit.field();
    let n = unit.n();
    let w = root_of_unity(f, n as u64)?;
    let (u, v) = fourier_matrix(f, n)?;
    let ok = u.mul(&v)?.is_identity();
    let rows: Vec<Vec<String>> = (0..n).map(|i| u.row(i).iter().map(|&x| f.format(x)).collect()).collect();
    emit(
        json,
        json!({ "n": n, "field": f.spec().to_string(), "omega": f.format(w), "matrix": rows, "inverse_checks": ok }),
        || format!("# F_{n} over {} with omega = {}\n{}# F times n^-1 F* is the identity: {ok}", f.spec(), f.format(w), write_matrix(&u)),
    );
    Ok(ok)
}

pub fn chebotarev(args: &UnitArgs, guard: usize, json: bool) -> Outcome {
    let unit = fourier_unit(args, 0)?;
    let rep = chebotarev_report(unit.u(), guard)?;
    let n = unit.n();
    let spec = unit.field().spec().to_string();
    emit(json, json!({ "n": n, "field": spec, "report": rep }), || match &rep.failure {
        None => format!("F_{n} over {spec}: every square submatrix is nonsingular ({} minors)", rep.minors),
        Some((r, c)) => format!("F_{n} over {spec}: singular minor at rows {r:?}, cols {c:?}"),
    });
    Ok(rep.holds)
}

pub struct DesignRequest {
    pub unit: UnitArgs,
    pub unit_file: Option<PathBuf>,
    pub grouping_file: Option<PathBuf>,
    pub as_u: bool,
    pub blocks: Option<usize>,
    pub rate: Option<usize>,
    pub memory: Option<usize>,
    pub scheme: Option<String>,
    pub distance: Option<DistanceArgs>,
}

fn design_unit(req: &DesignRequest) -> Result<UnitScheme, CliError> {
    let sources = [req.unit_file.is_some(), req.grouping_file.is_some(), req.unit.fourier.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(input("give exactly one of --fourier, --unit-file, --grouping-file"));
    }
    let unit = if let Some(path) = &req.unit_file {
        let m = parse_matrix(&read(path)?)?;
        UnitScheme::from_u(m)?.with_provenance(UnitProvenance::MatrixFile { path: path.display().to_string() })
    } else if let Some(path) = &req.grouping_file {
        let e = parse_element(&read(path)?)?;
        unit_from_element(&e, !req.as_u)?
    } else {
        fourier_unit(&req.unit, CHEBOTAREV_VERIFY_UP_TO)?
    };
    match req.blocks {
        Some(b) if b == 0 || unit.n() % b != 0 => Err(input(format!("{b} blocks do not divide {}", unit.n()))),
        Some(b) => {
            let size = unit.n() / b;
            Ok(unit.with_blocks(size)?)
        }
        None => Ok(unit),
    }
}

fn design_scheme(req: &DesignRequest, unit: &UnitScheme) -> Result<SelectionScheme, CliError> {
    match (&req.scheme, req.blocks) {
        (Some(s), Some(_)) => {
            let mut tuples = parse_scheme(s)?;
            if tuples.len() == 1 {
                tuples = tuples[0].iter().map(|&b| vec![b]).collect();
            }
            Ok(block_scheme(unit, &tuples)?)
        }
        (Some(s), None) => Ok(SelectionScheme::new(parse_scheme(s)?)?),
        (None, None) => {
            let r = req.rate.ok_or_else(|| input("--rate is required without --scheme"))?;
            let mu = req.memory.ok_or_else(|| input("--memory is required without --scheme"))?;
            Ok(auto_design(unit, r, mu)?)
        }
        (None, Some(_)) => Err(input("block designs need --scheme")),
    }
}

/// Certify `code`, attach distance and LDPC diagnostics, and wrap it in a card.
fn finish(mut code: ConvCode, unit: &UnitScheme, distance: Option<&DistanceArgs>) -> Result<CodeCard, CliError> {
    if code.certificates.right_inverse.is_none() {
        code.certify(Some(unit))?;
    }
    if let UnitProvenance::GroupRing { inverse: true, .. } = unit.provenance {
        code.certificates.ldpc = Some(tanner_diagnostics(unit.v()));
    }
    if let Some(d) = distance {
        code.certificates.distance = Some(free_distance(&code, Some(unit), &distance_options(d))?);
    }
    Ok(CodeCard::new(&code, Some(unit), now()))
}

fn summary(card: &CodeCard) -> Value {
    let c = &card.certificates;
    json!({
        "params": [card.n, card.r, card.delta, card.mu],
        "field": card.field.to_string(),
        "right_inverse": c.right_inverse.as_ref().map(|h| h.method),
        "distance": c.distance,
        "duality": c.duality.as_ref().map(|d| d.kind),
        "ldpc": c.ldpc,
    })
}

fn summary_text(card: &CodeCard) -> String {
    let c = &card.certificates;
    let mut lines = vec![format!("({},{},{};{}) code over {}", card.n, card.r, card.delta, card.mu, card.field)];
    if let Some(h) = &c.right_inverse {
        lines.push(format!("right inverse: {:?}", h.method));
    }
    if let Some(d) = &c.distance {
        lines.push(format!("distance: {}", distance_text(d)));
    }
    if let Some(d) = &c.duality {
        lines.push(format!("duality: {:?} (characteristic {})", d.kind, d.characteristic));
    }
    if let Some(t) = &c.ldpc {
        lines.push(format!("check side: column weights {:?}, 4-cycles: {}", t.column_weights, t.has_4cycle));
    }
    lines.join("\n")
}

/// Write the card to `out`, or print it when no path is given.
fn deliver(card: &CodeCard, out: Option<&Path>, json: bool) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, card.to_json())?;
            emit(json, summary(card), || format!("{}\ncard written to {}", summary_text(card), path.display()));
        }
        None => println!("{}", card.to_json()),
    }
    Ok(())
}

pub fn design(req: &DesignRequest, out: Option<&Path>, json: bool) -> Outcome {
    let unit = design_unit(req)?;
    let scheme = design_scheme(req, &unit)?;
    let code = build_generator(&unit, &scheme)?;
    let card = finish(code, &unit, req.distance.as_ref())?;
    deliver(&card, out, json)?;
    Ok(true)
}

pub fn certify(path: &Path, json: bool) -> Outcome {
    let card = load_card(path)?;
    let (code, _) = card.verify()?;
    emit(json, json!({ "verified": true, "summary": summary(&card) }), || {
        format!("{} {}: every certificate verifies", params_text(&code), card.field)
    });
    Ok(true)
}

pub fn distance(path: &Path, d: &DistanceArgs, support: Option<usize>, out: Option<&Path>, json: bool) -> Outcome {
    let mut card = load_card(path)?;
    let (code, unit) = card.verify()?;
    let opts = distance_options(d);
    if let Some(t) = support {
        let p = support_profile(&code, unit.as_ref(), t, &opts)?;
        emit(json, json!(p), || {
            let upper = p.upper.map_or("none found".to_string(), |u| u.to_string());
            format!(
                "inputs of support >= {t}: lower bound {} ({:?}), lightest found {upper}, search to degree {} complete: {}",
                p.lower, p.lower_source, p.max_degree, p.complete
            )
        });
        return Ok(true);
    }
    let rep = free_distance(&code, unit.as_ref(), &opts)?;
    emit(json, json!(rep), || format!("{} {}: {}", params_text(&code), card.field, distance_text(&rep)));
    if let Some(path) = out {
        card.certificates.distance = Some(rep);
        fs::write(path, card.to_json())?;
    }
    Ok(true)
}

pub fn gsb(n: usize, r: usize, delta: usize, json: bool) -> Outcome {
    if r == 0 || r >= n {
        return Err(input(format!("need 1 <= r < n, got r = {r}, n = {n}")));
    }
    let g = unitcode::gsb(n, r, delta);
    emit(json, json!({ "n": n, "r": r, "delta": delta, "gsb": g }), || g.to_string());
    Ok(true)
}

pub fn ldpc_build(file: Option<&Path>, blocks: usize, out: Option<&Path>, json: bool) -> Outcome {
    let e = match file {
        Some(path) => parse_element(&read(path)?)?,
        None => ldpc_element(),
    };
    let n = e.group().order();
    if blocks == 0 || n % blocks != 0 {
        return Err(input(format!("{blocks} blocks do not divide {n}")));
    }
    let b = n / blocks;
    let unit = unit_from_element(&e, true)?.with_blocks(b)?;
    let tanner = tanner_diagnostics(unit.v());
    let mut grid_ok = true;
    for i in 0..blocks {
        let a = unit.u().block(b * i, 0, b, n);
        for j in 0..blocks {
            let p = a.mul(&unit.v().block(0, b * j, n, b))?;
            grid_ok &= if i == j { p.is_identity() } else { p.is_zero() };
        }
    }
    let scheme = block_scheme(&unit, &(0..blocks).map(|k| vec![k]).collect_vec())?;
    let card = finish(build_generator(&unit, &scheme)?, &unit, None)?;
    let ok = grid_ok && !tanner.has_4cycle;
    let report = json!({
        "element_support": e.support(),
        "tanner": tanner,
        "block_grid_identity": grid_ok,
        "summary": summary(&card),
    });
    if let Some(path) = out {
        fs::write(path, card.to_json())?;
    }
    emit(json, report, || {
        format!(
            "element support {}; check side column weights {:?}, 4-cycles: {}; A_i B_j = delta_ij I: {grid_ok}\n{}",
            e.support(),
            tanner.column_weights,
            tanner.has_4cycle,
            summary_text(&card)
        )
    });
    Ok(ok)
}

fn group_element(g: &GroupArgs) -> Result<GroupRingElement, CliError> {
    let f = FieldSpec::parse_field(&g.field)?;
    let terms = g
        .support
        .split(',')
        .map(|t| {
            let exps = t
                .trim()
                .split(':')
                .map(|x| x.parse::<u32>().map_err(|_| input(format!("bad support term {t:?}"))))
                .collect::<Result<Vec<u32>, _>>()?;
            Ok((1, exps))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(element_from_terms(&f, &g.group, &terms)?)
}

fn self_dual_tuples(blocks: usize, perm: &[usize]) -> Result<Vec<Vec<usize>>, CliError> {
    match blocks {
        2 => Ok(vec![vec![0], vec![1]]),
        4 => Ok(vec![vec![perm[0], perm[1]], vec![perm[2], perm[3]]]),
        _ => Err(input("self-dual codes use 2 or 4 blocks")),
    }
}

fn self_dual_code(u: &Matrix, unit: &UnitScheme, blocks: usize, perm: &[usize]) -> Result<(ConvCode, bool), CliError> {
    let p = (blocks == 4).then_some(perm);
    match build_self_dual(u, blocks, p) {
        Ok(code) => Ok((code, true)),
        // the defining identity can hold without an orthogonal unit
        Err(DualityError::NotOrthogonal) => {
            let scheme = block_scheme(unit, &self_dual_tuples(blocks, perm)?)?;
            Ok((certified_self_dual(unit, build_generator(unit, &scheme)?)?, false))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn selfdual(g: &GroupArgs, blocks: usize, perm: Option<&str>, all: bool, out: Option<&Path>, json: bool) -> Outcome {
    let e = group_element(g)?;
    let u = to_matrix(&e);
    if blocks == 0 || u.rows() % blocks != 0 {
        return Err(input(format!("{blocks} blocks do not divide {}", u.rows())));
    }
    let unit = unit_from_element(&e, false)?.with_blocks(u.rows() / blocks)?;
    if all {
        if blocks != 4 {
            return Err(input("--all-perms needs --blocks 4"));
        }
        let mut certified = 0;
        for p in (0..4).permutations(4) {
            let (code, _) = self_dual_code(&u, &unit, 4, &p)?;
            certified += code.certificates.duality.as_ref().is_some_and(|c| c.verify(&code)) as usize;
        }
        emit(json, json!({ "orders": 24, "certified": certified }), || format!("{certified} of 24 block orders certify self-dual"));
        return Ok(certified == 24);
    }
    let perm = match perm {
        Some(p) => parse_list(p)?,
        None => (0..blocks).collect(),
    };
    if blocks == 4 && (perm.len() != 4 || !perm.iter().sorted().copied().eq(0..4)) {
        return Err(input("--perm must order the blocks 0,1,2,3"));
    }
    let (code, orthogonal) = self_dual_code(&u, &unit, blocks, &perm)?;
    let card = finish(code, &unit, Some(&default_distance()))?;
    if !orthogonal && !json && out.is_some() {
        println!("unit is not orthogonal; the self-dual identity was checked directly");
    }
    deliver(&card, out, json)?;
    Ok(true)
}

fn default_distance() -> DistanceArgs {
    DistanceArgs { guard_states: 1 << 22, depth: 4, support_cap: 3, node_budget: 20_000_000 }
}

pub fn dualcontain(g: &GroupArgs, blocks: usize, out: Option<&Path>, json: bool) -> Outcome {
    let e = group_element(g)?;
    let u = to_matrix(&e);
    if blocks < 2 || u.rows() % blocks != 0 {
        return Err(input(format!("{blocks} blocks do not split {} rows", u.rows())));
    }
    let unit = unit_from_element(&e, false)?.with_blocks(u.rows() / blocks)?;
    let code = build_dual_containing(&u, blocks)?;
    let card = finish(code, &unit, Some(&default_distance()))?;
    deliver(&card, out, json)?;
    Ok(true)
}

pub fn repro(only: Option<&str>, seed: u64, cases: usize, json: bool) -> Outcome {
    if let Some(f) = only {
        if !(1..=10).any(|k| unitcode::repro::selects(f, k)) {
            return Err(input(format!("unknown group {f:?}; use one of {}", unitcode::repro::GROUPS.join(", "))));
        }
    }
    let opts = ReproOptions { seed, cases, ..ReproOptions::default() };
    let rows = run(only, &opts);
    let pass = rows.iter().all(|r| r.pass);
    if json {
        println!("{}", json!({ "pass": pass, "rows": rows }));
    } else {
        for r in &rows {
            let status = if r.pass { "PASS" } else { "FAIL" };
            println!("{status} [{}] {}: expected {}; observed {} ({} ms)", r.criterion, r.name, r.expected, r.observed, r.millis);
        }
        let failed = rows.iter().filter(|r| !r.pass).count();
        println!("{} rows, {failed} failed", rows.len());
    }
    Ok(pass)
}

fn poly_text(m: &PolyMatrix) -> String {
    m.blocks().iter().enumerate().map(|(k, b)| format!("# z^{k}\n{}", write_matrix(b))).collect()
}

pub fn export(path: &Path, what: &str) -> Outcome {
    let card = load_card(path)?;
    let (code, unit) = card.to_code()?;
    let c = &code.certificates;
    let missing = |name: &str| input(format!("card has no {name}"));
    let text = match what {
        "generator" => poly_text(code.generator()),
        "inverse" => poly_text(&c.right_inverse.as_ref().ok_or_else(|| missing("right inverse"))?.1),
        "check" => poly_text(&c.check_matrix.as_ref().ok_or_else(|| missing("check matrix"))?.1),
        "dual" => poly_text(
            c.duality.as_ref().and_then(|d| d.dual_generator.as_ref()).ok_or_else(|| missing("dual generator"))?,
        ),
        "unit" => write_matrix(unit.as_ref().ok_or_else(|| missing("unit"))?.u()),
        "element" => match unit.as_ref().map(|u| &u.provenance) {
            Some(UnitProvenance::GroupRing { group, support, .. }) => {
                let f: Field = card.field.build()?;
                write_element(&element_from_terms(&f, group, support)?)
            }
            _ => return Err(missing("group ring element")),
        },
        other => return Err(input(format!("unknown export {other:?}; use generator, inverse, check, dual, unit or element"))),
    };
    print!("{text}");
    Ok(true)
}
