//! Implementations of the CLI subcommands.
//!
//! Commands print their results to stdout; anything nondeterministic or
//! advisory (timings, cache hits, file-written notes) goes to stderr so that
//! stdout stays byte-for-byte reproducible and diffable. In `records` mode
//! every stdout line is one JSON object tagged with a schema version.

use std::io::Write as _;
use std::ops::{ControlFlow, RangeInclusive};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cyclohedron::abcd::{build_abcd_pair, enumerate_pairs, AbcdPair};
use cyclohedron::bounds::{choose_a, chosen_a_lower_bound, diameter_lower_bound};
use cyclohedron::constructions::{diameter_upper_bound, upper_bound_path};
use cyclohedron::deletion::delete_vertex;
use cyclohedron::format;
use cyclohedron::search::DistanceReport;
use cyclohedron::{
    cs_count, diameter, distance, for_each_cs, sample_cs, CsTriangulation, Edge, Error as LibError,
    FlipPath, MoveKind, PolygonDim, SearchConfig, Vertex,
};

use crate::cache::{CachedSearch, ResultCache, SCHEMA};
use crate::svg;
use crate::Format;

/// Everything a command needs besides its own arguments: output format,
/// cache handle, and the search configuration derived from `--cap`.
pub struct Ctx {
    pub format: Format,
    pub cache: ResultCache,
    pub cfg: SearchConfig,
    pub cap: Option<u64>,
    pub witness: bool,
    pub deep: bool,
}

/// Seed for every sampled check, varied per dimension. Fixed so that two
/// runs of the same command check the same instances.
const SAMPLE_SEED: u64 = 0x5EED_0C1C;

// ---------------------------------------------------------------------------
// shared plumbing

/// Parses `"A..B"` (inclusive; `"A..=B"` also accepted) or a bare `"B"`
/// meaning `1..=B`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u16>> {
    let text = text.trim();
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (
                a.trim()
                    .parse::<u16>()
                    .with_context(|| format!("bad range start `{a}`"))?,
                b.trim()
                    .parse::<u16>()
                    .with_context(|| format!("bad range end `{b}`"))?,
            )
        }
        None => (
            1,
            text.parse::<u16>()
                .with_context(|| format!("bad dimension `{text}`"))?,
        ),
    };
    if lo < 1 {
        bail!("dimensions start at 1, got {lo}");
    }
    if lo > hi {
        bail!("empty dimension range {lo}..{hi}");
    }
    Ok(lo..=hi)
}

/// Dimensions 9 and up take minutes of search; make the user say so, unless
/// an explicit `--cap` already bounds the work.
fn guard_deep(d_max: u16, ctx: &Ctx) -> Result<()> {
    if d_max >= 9 && !ctx.deep && ctx.cap.is_none() {
        bail!(
            "dimension {d_max} means minutes of search; pass --deep to confirm, \
             or bound the work with --cap <N>"
        );
    }
    Ok(())
}

/// Reads a triangulation document from a file, or from stdin when the path
/// is `-`. Errors name the file; parse errors additionally name the line.
pub fn read_triangulation(path: &Path) -> Result<CsTriangulation> {
    let body = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    format::parse(&body).with_context(|| format!("in {}", path.display()))
}

fn kind_str(kind: MoveKind) -> &'static str {
    match kind {
        MoveKind::Diagonal => "diagonal",
        MoveKind::MirrorPair => "mirror-pair",
    }
}

fn edge_json(e: Edge) -> serde_json::Value {
    json!([e.lo().0, e.hi().0])
}

fn ratio_approx(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn search_to_cached(r: &DistanceReport) -> CachedSearch {
    CachedSearch {
        value: r.value,
        partial: false,
        explored: r.explored,
        method: r.method.as_str().to_string(),
    }
}

/// Prints one search result. Exact values print bare; capped ones print as
/// `N*`, the star marking a lower bound rather than an exact value, plus an
/// explicit `partial` field.
fn emit_search(ctx: &Ctx, kind: &str, r: &CachedSearch) {
    match ctx.format {
        Format::Records => println!(
            "{}",
            json!({
                "schema": SCHEMA,
                "kind": kind,
                "value": r.value,
                "partial": r.partial,
                "method": r.method,
                "explored": r.explored,
            })
        ),
        Format::Text => {
            if r.partial {
                println!("{kind} {}* (lower bound; search capped)", r.value);
                println!("partial true");
            } else {
                println!("{kind} {}", r.value);
            }
            println!("method {}", r.method);
            println!("explored {}", r.explored);
        }
    }
}

/// Prints a flip path: in text mode as a sequence of triangulation blocks
/// separated by move comments (the whole output stays parseable, comments
/// included), in records mode as one record.
fn print_path(ctx: &Ctx, path: &FlipPath) {
    match ctx.format {
        Format::Records => {
            let states: Vec<String> = path.states().iter().map(format::serialize).collect();
            let moves: Vec<serde_json::Value> = path
                .moves()
                .iter()
                .map(|m| {
                    json!({
                        "removed": edge_json(m.removed),
                        "introduced": edge_json(m.introduced),
                        "kind": kind_str(m.kind),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "kind": "path",
                    "length": path.len(),
                    "states": states,
                    "moves": moves,
                })
            );
        }
        Format::Text => {
            for (i, state) in path.states().iter().enumerate() {
                println!();
                if i == 0 {
                    println!("# step 0 (start)");
                } else {
                    let mv = &path.moves()[i - 1];
                    println!(
                        "# step {i}: removed {} introduced {} ({})",
                        mv.removed,
                        mv.introduced,
                        kind_str(mv.kind)
                    );
                }
                print!("{}", format::serialize(state));
            }
        }
    }
}

/// Diameter of dimension `d` through the cache, downgrading a cap hit to a
/// tagged partial result instead of an error.
fn diameter_cached(ctx: &Ctx, d: u16) -> Result<(CachedSearch, bool)> {
    let dim = PolygonDim::new(d)?;
    let key = json!({"cmd": "diameter", "d": d, "cap": ctx.cap});
    ctx.cache
        .get_or_compute(key, || match diameter(dim, &ctx.cfg, false) {
            Ok(r) => Ok(search_to_cached(&r)),
            Err(LibError::ResourceLimit {
                explored,
                lower_bound,
            }) => Ok(CachedSearch {
                value: lower_bound.unwrap_or(0),
                partial: true,
                explored,
                method: "orbit-reduced".to_string(),
            }),
            Err(e) => Err(e.into()),
        })
}

// ---------------------------------------------------------------------------
// table

pub fn cmd_table(ctx: &Ctx, range: &str) -> Result<()> {
    let range = parse_range(range)?;
    guard_deep(*range.end(), ctx)?;

    let mut rows = Vec::new();
    let mut prev: Option<u32> = None;
    for d in range {
        let start = Instant::now();
        let (row, hit) = diameter_cached(ctx, d)?;
        eprintln!(
            "# d={d}: {} ms{}",
            start.elapsed().as_millis(),
            if hit { " (cached)" } else { "" }
        );
        // A +3 jump needs exact values on both sides of the step.
        let jump3 = !row.partial && prev.is_some_and(|p| row.value == p + 3);
        prev = (!row.partial).then_some(row.value);
        rows.push((d, row, jump3));
    }

    match ctx.format {
        Format::Records => {
            for (d, row, jump3) in &rows {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "kind": "table-row",
                        "d": d,
                        "delta": row.value,
                        "partial": row.partial,
                        "upper": diameter_upper_bound(*d),
                        "lower": diameter_lower_bound(*d),
                        "jump3": jump3,
                        "states": row.explored,
                        "method": row.method,
                    })
                );
            }
        }
        Format::Text => {
            println!(
                "{:>3}  {:>10}  {:>7}  {:>6}  {:>8}  {}",
                "d", "states", "delta", "upper", "lower", "jump"
            );
            for (d, row, jump3) in &rows {
                let delta = if row.partial {
                    format!("{}*", row.value)
                } else {
                    row.value.to_string()
                };
                println!(
                    "{:>3}  {:>10}  {:>7}  {:>6}  {:>8.2}  {}",
                    d,
                    row.explored,
                    delta,
                    diameter_upper_bound(*d),
                    diameter_lower_bound(*d),
                    if *jump3 { "+3" } else { "" }
                );
            }
            if rows.iter().any(|(_, row, _)| row.partial) {
                println!();
                println!("* = proven lower bound only; the search hit its cap");
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// distance / diameter

pub fn cmd_distance(ctx: &Ctx, file1: &Path, file2: &Path) -> Result<()> {
    let a = read_triangulation(file1)?;
    let b = read_triangulation(file2)?;

    if ctx.witness {
        // Witness requests bypass the cache: only the value is memoized.
        let r = distance(&a, &b, &ctx.cfg, true)?;
        emit_search(ctx, "distance", &search_to_cached(&r));
        if let Some(path) = &r.witness {
            print_path(ctx, path);
        }
        return Ok(());
    }

    let key = json!({
        "cmd": "distance",
        "cap": ctx.cap,
        "a": format::serialize(&a),
        "b": format::serialize(&b),
    });
    let (res, hit) = ctx
        .cache
        .get_or_compute(key, || match distance(&a, &b, &ctx.cfg, false) {
            Ok(r) => Ok(search_to_cached(&r)),
            Err(LibError::ResourceLimit {
                explored,
                lower_bound,
            }) => Ok(CachedSearch {
                value: lower_bound.unwrap_or(0),
                partial: true,
                explored,
                method: "bidirectional-bfs".to_string(),
            }),
            Err(e) => Err(e.into()),
        })?;
    if hit {
        eprintln!("# cache hit");
    }
    emit_search(ctx, "distance", &res);
    Ok(())
}

pub fn cmd_diameter(ctx: &Ctx, d: u16) -> Result<()> {
    guard_deep(d, ctx)?;

    if ctx.witness {
        let dim = PolygonDim::new(d)?;
        let r = diameter(dim, &ctx.cfg, true)?;
        emit_search(ctx, "diameter", &search_to_cached(&r));
        if let Some(path) = &r.witness {
            print_path(ctx, path);
        }
        return Ok(());
    }

    let (res, hit) = diameter_cached(ctx, d)?;
    if hit {
        eprintln!("# cache hit");
    }
    emit_search(ctx, "diameter", &res);
    Ok(())
}

// ---------------------------------------------------------------------------
// enumerate

pub fn cmd_enumerate(ctx: &Ctx, d: u16, list: bool) -> Result<()> {
    let dim = PolygonDim::new(d)?;
    let count = cs_count(d);
    match ctx.format {
        Format::Records => println!(
            "{}",
            json!({"schema": SCHEMA, "kind": "count", "d": d, "count": count})
        ),
        Format::Text => println!("count {count}"),
    }
    if !list {
        return Ok(());
    }

    let cap = ctx.cap.unwrap_or(u64::MAX);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut emitted: u64 = 0;
    let stopped = for_each_cs(dim, |t| {
        if emitted >= cap {
            return ControlFlow::Break(Ok(()));
        }
        emitted += 1;
        let res = match ctx.format {
            Format::Records => writeln!(
                out,
                "{}",
                json!({
                    "schema": SCHEMA,
                    "kind": "triangulation",
                    "index": emitted - 1,
                    "doc": format::serialize(t),
                })
            ),
            Format::Text => writeln!(out, "\n# {}", emitted - 1)
                .and_then(|()| write!(out, "{}", format::serialize(t))),
        };
        match res {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => ControlFlow::Break(Err(e)),
        }
    });
    out.flush()?;
    if let Some(res) = stopped {
        res.context("writing the listing")?;
        eprintln!("# listing truncated at cap {cap}; full count is {count}");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pair

fn parse_pair_args(args: &[String]) -> Result<(u16, u16, u16, Option<Vec<u16>>)> {
    let (mut b, mut c, mut d, mut staircase) = (None, None, None, None);
    for arg in args {
        let (key, value) = arg
            .split_once('=')
            .with_context(|| format!("expected key=value, got `{arg}`"))?;
        match key.trim() {
            "b" => b = Some(value.trim().parse::<u16>().context("parsing b")?),
            "c" => c = Some(value.trim().parse::<u16>().context("parsing c")?),
            "d" => d = Some(value.trim().parse::<u16>().context("parsing d")?),
            "staircase" => {
                let teeth = value
                    .split(',')
                    .map(|t| t.trim().parse::<u16>())
                    .collect::<Result<Vec<_>, _>>()
                    .context("parsing staircase")?;
                staircase = Some(teeth);
            }
            other => bail!("unknown parameter `{other}` (expected b=, c=, d=, staircase=)"),
        }
    }
    match (b, c, d) {
        (Some(b), Some(c), Some(d)) => Ok((b, c, d, staircase)),
        _ => bail!("b=, c= and d= are all required"),
    }
}

fn print_pair(ctx: &Ctx, pair: &AbcdPair) {
    let p = &pair.params;
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let l = p.zigzag_start;
    let staircase: Vec<String> = p.staircase.iter().map(|t| t.to_string()).collect();
    let bound = p.lower_bound();
    // Three closed forms for the zigzag start seen in different derivations;
    // which ones agree with the actual value depends on the staircase.
    let variants: [(&str, i64); 3] = [
        ("a+b-c+2", i64::from(a) + i64::from(b) - i64::from(c) + 2),
        ("a+b-d+2", i64::from(a) + i64::from(b) - i64::from(d) + 2),
        ("a+b-c+4", i64::from(a) + i64::from(b) - i64::from(c) + 4),
    ];

    match ctx.format {
        Format::Records => {
            let l_variants: serde_json::Map<String, serde_json::Value> = variants
                .iter()
                .map(|&(name, v)| (name.to_string(), json!(v)))
                .collect();
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "kind": "pair",
                    "b": b, "c": c, "d": d,
                    "staircase": p.staircase,
                    "a": a,
                    "k": p.k(),
                    "l": l,
                    "l_variants": l_variants,
                    "tau_minus": p.teeth_minus,
                    "tau_plus": p.teeth_plus,
                    "lower_bound": {
                        "numer": *bound.numer(),
                        "denom": *bound.denom(),
                        "approx": ratio_approx(bound),
                    },
                    "t_minus": format::serialize(&pair.t_minus),
                    "t_plus": format::serialize(&pair.t_plus),
                })
            );
        }
        Format::Text => {
            println!("pair b={b} c={c} d={d} staircase={}", staircase.join(","));
            println!("a {a}");
            println!("k {} (teeth of the comb at 1 in t-minus)", p.k());
            println!("l {l} (zigzag start)");
            for (name, v) in variants {
                let mark = if v == i64::from(l) { " (match)" } else { "" };
                println!("l variant {name} = {v}{mark}");
            }
            println!("tau-minus {}", p.teeth_minus);
            println!("tau-plus {}", p.teeth_plus);
            println!(
                "lower-bound {bound} (~{:.3}) [distance >= 3d - (b/2 + (2c-b)/a + 3a + 5)]",
                ratio_approx(bound)
            );
            println!(
                "gate a + ceil(b/2) + 1 < d: {} < {d}",
                u32::from(a) + u32::from(b).div_ceil(2) + 1
            );
            println!();
            println!("# t-minus");
            print!("{}", format::serialize(&pair.t_minus));
            println!();
            println!("# t-plus");
            print!("{}", format::serialize(&pair.t_plus));
        }
    }
}

pub fn cmd_pair(ctx: &Ctx, args: &[String]) -> Result<()> {
    let (b, c, d, staircase) = parse_pair_args(args)?;
    let pair = build_abcd_pair(b, c, d, staircase.as_deref())?;
    print_pair(ctx, &pair);
    Ok(())
}

// ---------------------------------------------------------------------------
// upper-path

pub fn cmd_upper_path(ctx: &Ctx, file1: &Path, file2: &Path) -> Result<()> {
    let a = read_triangulation(file1)?;
    let b = read_triangulation(file2)?;
    let path = upper_bound_path(&a, &b)?;
    let bound = diameter_upper_bound(a.dim().d());

    match ctx.format {
        Format::Records => {
            let moves: Vec<serde_json::Value> = path
                .moves()
                .iter()
                .map(|m| {
                    json!({
                        "removed": edge_json(m.removed),
                        "introduced": edge_json(m.introduced),
                        "kind": kind_str(m.kind),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "kind": "upper-path",
                    "length": path.len(),
                    "bound": bound,
                    "moves": moves,
                })
            );
        }
        Format::Text => {
            println!("length {}", path.len());
            println!("bound {bound} [ceil(5d/2) - 2]");
            println!("moves");
            for (i, mv) in path.moves().iter().enumerate() {
                println!(
                    "{} {} -> {} ({})",
                    i + 1,
                    mv.removed,
                    mv.introduced,
                    kind_str(mv.kind)
                );
            }
        }
    }
    if ctx.witness {
        print_path(ctx, &path);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// delete

pub fn cmd_delete(ctx: &Ctx, file: &Path, p: u16) -> Result<()> {
    let t = read_triangulation(file)?;
    let opposite = t.dim().opposite(Vertex(p));
    let (smaller, map) = delete_vertex(&t, Vertex(p))?;
    let relabel: Vec<(u16, u16)> = (0..map.len_before())
        .filter_map(|old| map.apply(Vertex(old)).map(|new| (old, new.0)))
        .collect();

    match ctx.format {
        Format::Records => {
            let pairs: Vec<serde_json::Value> =
                relabel.iter().map(|&(o, n)| json!([o, n])).collect();
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "kind": "delete",
                    "p": p,
                    "opposite": opposite.0,
                    "relabel": pairs,
                    "doc": format::serialize(&smaller),
                })
            );
        }
        Format::Text => {
            // Comment lines keep the whole output parseable as a document.
            println!("# deleted {p} and its opposite {opposite}");
            let pairs: Vec<String> = relabel.iter().map(|(o, n)| format!("{o}->{n}")).collect();
            println!("# relabel {}", pairs.join(" "));
            print!("{}", format::serialize(&smaller));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// render

fn parse_dotted(items: &[String], dim: PolygonDim) -> Result<Vec<Edge>> {
    let mut edges = Vec::with_capacity(items.len());
    for item in items {
        let (u, v) = item
            .split_once('-')
            .with_context(|| format!("expected U-V, got `{item}`"))?;
        let u: u16 = u.trim().parse().with_context(|| format!("in `{item}`"))?;
        let v: u16 = v.trim().parse().with_context(|| format!("in `{item}`"))?;
        if u == v {
            bail!("degenerate dotted edge `{item}`");
        }
        dim.check_vertex(Vertex(u))?;
        dim.check_vertex(Vertex(v))?;
        edges.push(Edge::new(u, v));
    }
    Ok(edges)
}

pub fn cmd_render(_ctx: &Ctx, file: &Path, out: &Path, dotted: &[String]) -> Result<()> {
    let t = read_triangulation(file)?;
    let dotted = parse_dotted(dotted, t.dim())?;
    let doc = svg::render(&t, &dotted);
    if out == Path::new("-") {
        print!("{doc}");
    } else {
        std::fs::write(out, &doc).with_context(|| format!("writing {}", out.display()))?;
        eprintln!("# wrote {}", out.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify-bounds

struct CheckOutcome {
    name: &'static str,
    formula: &'static str,
    cases: u64,
    violations: u64,
    skipped: Option<String>,
}

fn emit_check(ctx: &Ctx, d: u16, outcome: &CheckOutcome) {
    match ctx.format {
        Format::Records => println!(
            "{}",
            json!({
                "schema": SCHEMA,
                "kind": "verify-check",
                "d": d,
                "check": outcome.name,
                "formula": outcome.formula,
                "cases": outcome.cases,
                "violations": outcome.violations,
                "skipped": outcome.skipped,
            })
        ),
        Format::Text => {
            if let Some(reason) = &outcome.skipped {
                println!("d={d} {}: skipped ({reason})", outcome.name);
            } else {
                let status = if outcome.violations == 0 {
                    "ok"
                } else {
                    "FAIL"
                };
                println!(
                    "d={d} {}: {} cases, {} violations, {status} [{}]",
                    outcome.name, outcome.cases, outcome.violations, outcome.formula
                );
            }
        }
    }
}

fn emit_violation(ctx: &Ctx, d: u16, check: &'static str, detail: String) {
    match ctx.format {
        Format::Records => println!(
            "{}",
            json!({
                "schema": SCHEMA,
                "kind": "violation",
                "d": d,
                "check": check,
                "detail": detail,
            })
        ),
        Format::Text => println!("VIOLATION d={d} {check}: {detail}"),
    }
}

/// One upper-bound path check; returns a violation detail if any clause
/// fails. Library errors while constructing the path count as violations
/// too — the verifier's job is to report, not crash.
fn upper_path_violation(
    ctx: &Ctx,
    a: &CsTriangulation,
    b: &CsTriangulation,
    bound: u32,
) -> Result<Option<String>> {
    let path = match upper_bound_path(a, b) {
        Ok(p) => p,
        Err(e) => return Ok(Some(format!("path construction failed: {e}"))),
    };
    if let Err(e) = path.validate() {
        return Ok(Some(format!("path does not validate: {e}")));
    }
    if path.start() != a || path.end() != b {
        return Ok(Some("path endpoints differ from the inputs".to_string()));
    }
    if path.len() as u32 > bound {
        return Ok(Some(format!("length {} > bound {bound}", path.len())));
    }
    let exact = distance(a, b, &ctx.cfg, false)?.value;
    if (path.len() as u32) < exact {
        return Ok(Some(format!(
            "length {} < exact distance {exact}: the distance search is broken",
            path.len()
        )));
    }
    Ok(None)
}

fn verify_dimension(ctx: &Ctx, d: u16, total_violations: &mut u64) -> Result<()> {
    let dim = PolygonDim::new(d)?;

    // Distant pairs with c = d, every admissible staircase: the constructed
    // distance must respect the pair bound.
    let mut outcome = CheckOutcome {
        name: "pair-lower-bound",
        formula: "distance >= 3d - (b/2 + (2c-b)/a + 3a + 5)",
        cases: 0,
        violations: 0,
        skipped: None,
    };
    for pair in enumerate_pairs(d)
        .iter()
        .filter(|p| p.params.c == p.params.d)
    {
        outcome.cases += 1;
        let exact = distance(&pair.t_minus, &pair.t_plus, &ctx.cfg, false)?.value;
        let bound = pair.params.lower_bound();
        if Ratio::from_integer(i64::from(exact)) < bound {
            outcome.violations += 1;
            let p = &pair.params;
            emit_violation(
                ctx,
                d,
                outcome.name,
                format!(
                    "b={} c={} d={} staircase={:?}: distance {exact} < bound {bound}",
                    p.b, p.c, p.d, p.staircase
                ),
            );
        }
    }
    emit_check(ctx, d, &outcome);
    *total_violations += outcome.violations;

    // The chosen-a family pair (b = d-a, c = d-a+1, all-2 staircase).
    let mut outcome = CheckOutcome {
        name: "chosen-a",
        formula: "distance >= (5/2)(d-a) - (d+2)/a - 4",
        cases: 0,
        violations: 0,
        skipped: None,
    };
    if d < 6 {
        outcome.skipped = Some("requires d >= 6".to_string());
    } else {
        let a = choose_a(u32::from(d))? as u16;
        let pair = build_abcd_pair(d - a, d - a + 1, d, None)?;
        outcome.cases = 1;
        let mut details = Vec::new();
        if pair.params.a != a {
            details.push(format!(
                "derived a = {} differs from chosen a = {a}",
                pair.params.a
            ));
        }
        let exact = distance(&pair.t_minus, &pair.t_plus, &ctx.cfg, false)?.value;
        let exact_ratio = Ratio::from_integer(i64::from(exact));
        let family_bound = chosen_a_lower_bound(d, a);
        if exact_ratio < family_bound {
            details.push(format!("distance {exact} < family bound {family_bound}"));
        }
        let pair_bound = pair.params.lower_bound();
        if exact_ratio < pair_bound {
            details.push(format!("distance {exact} < pair bound {pair_bound}"));
        }
        if !details.is_empty() {
            outcome.violations = 1;
            emit_violation(
                ctx,
                d,
                outcome.name,
                format!("a={a}: {}", details.join("; ")),
            );
        }
    }
    emit_check(ctx, d, &outcome);
    *total_violations += outcome.violations;

    // Upper-bound paths: exhaustive over ordered pairs when the state space
    // is small, otherwise a fixed-seed sample.
    let mut outcome = CheckOutcome {
        name: "upper-path",
        formula: "distance <= length <= ceil(5d/2) - 2",
        cases: 0,
        violations: 0,
        skipped: None,
    };
    let bound = diameter_upper_bound(d);
    if cs_count(d) <= 70 {
        let states = cyclohedron::enumerate_cs(dim, 1 << 20)?;
        for a in &states {
            for b in &states {
                outcome.cases += 1;
                if let Some(detail) = upper_path_violation(ctx, a, b, bound)? {
                    outcome.violations += 1;
                    emit_violation(ctx, d, outcome.name, detail);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ u64::from(d));
        for _ in 0..100 {
            let a = sample_cs(dim, &mut rng);
            let b = sample_cs(dim, &mut rng);
            outcome.cases += 1;
            if let Some(detail) = upper_path_violation(ctx, &a, &b, bound)? {
                outcome.violations += 1;
                emit_violation(ctx, d, outcome.name, detail);
            }
        }
    }
    emit_check(ctx, d, &outcome);
    *total_violations += outcome.violations;

    Ok(())
}

pub fn cmd_verify_bounds(ctx: &Ctx, range: &str) -> Result<()> {
    let range = parse_range(range)?;
    guard_deep(*range.end(), ctx)?;

    let mut violations: u64 = 0;
    for d in range {
        verify_dimension(ctx, d, &mut violations)?;
    }

    match ctx.format {
        Format::Records => println!(
            "{}",
            json!({
                "schema": SCHEMA,
                "kind": "verify-summary",
                "violations": violations,
                "ok": violations == 0,
            })
        ),
        Format::Text => {
            if violations == 0 {
                println!("all bounds hold");
            }
        }
    }
    if violations > 0 {
        bail!("{violations} bound violation(s) found");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_inclusively() {
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range("4..=7").unwrap(), 4..=7);
        assert_eq!(parse_range("6").unwrap(), 1..=6);
        assert_eq!(parse_range(" 2 .. 3 ").unwrap(), 2..=3);
        assert!(parse_range("0..4").is_err());
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x..2").is_err());
        assert!(parse_range("").is_err());
    }

    #[test]
    fn pair_arguments_parse() {
        let args: Vec<String> = ["b=4", "c=5", "d=6"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(parse_pair_args(&args).unwrap(), (4, 5, 6, None));

        let args: Vec<String> = ["d=9", "b=3", "c=7", "staircase=2,3,2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            parse_pair_args(&args).unwrap(),
            (3, 7, 9, Some(vec![2, 3, 2]))
        );

        for bad in [&["b=4", "c=5"][..], &["b=4", "c=5", "d=6", "e=1"][..]] {
            let args: Vec<String> = bad.iter().map(|s| s.to_string()).collect();
            assert!(parse_pair_args(&args).is_err());
        }
    }

    #[test]
    fn dotted_lists_parse() {
        let dim = PolygonDim::new(2).unwrap();
        let items: Vec<String> = ["0-2", "1-4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            parse_dotted(&items, dim).unwrap(),
            vec![Edge::new(0, 2), Edge::new(1, 4)]
        );
        for bad in ["0-0", "0-6", "02", "a-1"] {
            assert!(parse_dotted(&[bad.to_string()], dim).is_err(), "{bad}");
        }
    }
}
