use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use gls_core::bounds::{self, BoundCertificate, PairScan};
use gls_core::extremal::{self, EdgeColoredGraph, EnumerationConfig, FactorOutcome, PrefixFilter, SearchLimits};
use gls_core::solvers::{self, Decomposition, SearchMode, SolveReport};
use gls_core::{compute_stats, CellRef, Error, Square, Transversal};
use serde::Serialize;
use serde_json::json;

use crate::{
    CertifyArgs, ConstructArgs, ConstructKind, EnumerateArgs, LNumberArgs, Limits, RainbowArgs, ReduceArgs,
    SolveArgs, SolveMethod, SolveMode,
};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfeasibleParams(_) | Error::AssertionFailure(_) | Error::DegenerateExtraction(..) => 1,
            Error::ResourceLimit(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, CliError>;

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}")))
}

fn read_square(path: &str) -> Result<Square, CliError> {
    Square::parse(&read(path)?).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{path}: {}", err.message);
        err
    })
}

fn read_graph(path: &str) -> Result<EdgeColoredGraph, CliError> {
    EdgeColoredGraph::parse(&read(path)?).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{path}: {}", err.message);
        err
    })
}

fn write_out(output: Option<&str>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::usage(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cells_text(triples: &[[u64; 3]]) -> String {
    triples
        .iter()
        .map(|[r, c, s]| format!("({r},{c}):{s}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn deadline(limits: &Limits) -> Option<Instant> {
    limits
        .timeout_s
        .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)))
}

pub fn check(path: &str, json: bool) -> CmdResult {
    if path.ends_with(".ecg") {
        let g = read_graph(path)?;
        if json {
            print_json(&json!({ "m": g.m(), "color_count": g.color_count(), "proper": true }));
        } else {
            println!("vertices: {}\ncolors: {}\nproper: yes", g.m(), g.color_count());
        }
        return Ok(0);
    }
    let sq = read_square(path)?;
    let stats = compute_stats(&sq);
    if json {
        print_json(&json!({
            "n": sq.n(),
            "symbol_count": sq.symbol_count(),
            "singletons": stats.singleton_count(),
            "repetitions": stats.repetitions.len(),
            "max_multiplicity": stats.max_multiplicity(),
            "c_row": stats.row_weight,
            "c_col": stats.col_weight,
            "histogram": stats.histogram,
        }));
    } else {
        println!("order: {}", sq.n());
        println!("symbols: {}", sq.symbol_count());
        println!("singletons: {}", stats.singleton_count());
        println!("repetitions: {}", stats.repetitions.len());
        println!("c_row: {}", join(&stats.row_weight));
        println!("c_col: {}", join(&stats.col_weight));
    }
    Ok(0)
}

pub fn solve(args: &SolveArgs) -> CmdResult {
    let sq = read_square(&args.path)?;
    let report = match args.method {
        SolveMethod::Exact => {
            let mode = match args.mode {
                SolveMode::First => SearchMode::First,
                SolveMode::Count => SearchMode::Count,
                SolveMode::All => SearchMode::All,
            };
            match args.seed {
                None => solvers::find_transversal_exact(&sq, mode),
                Some(seed) => {
                    let (shuffled, rows, cols) = extremal::shuffle_lines(&sq, seed);
                    let back = |t: &Transversal| {
                        Transversal::new(t.cells().iter().map(|c| CellRef::new(rows[c.row], cols[c.col])).collect())
                    };
                    let mut r = solvers::find_transversal_exact(&shuffled, mode);
                    if let solvers::Outcome::Found(t) = &r.outcome {
                        r.outcome = solvers::Outcome::Found(back(t));
                    }
                    r.all = r.all.map(|ts| ts.iter().map(back).collect());
                    r
                }
            }
        }
        SolveMethod::Constructive | SolveMethod::MultSplit if !matches!(args.mode, SolveMode::First) => {
            return Err(CliError::usage("--mode count/all needs --method exact"));
        }
        SolveMethod::Constructive => solvers::find_transversal_constructive(&sq)?,
        SolveMethod::MultSplit => solvers::solve_multiplicity_split(&sq)?,
    };
    print_report(&sq, &report, args.json);
    Ok(if report.outcome.is_found() { 0 } else { 1 })
}

fn print_report(sq: &Square, report: &SolveReport, json: bool) {
    let j = report.to_json(sq);
    if json {
        print_json(&j);
        return;
    }
    println!("outcome: {}", j.outcome);
    println!("method: {}", report.method);
    if !j.cells.is_empty() {
        println!("cells: {}", cells_text(&j.cells));
    }
    println!("nodes: {}", j.node_count);
    if let Some(c) = j.count {
        println!("count: {c}");
    }
    if let Some(all) = &j.all {
        for t in all {
            println!("transversal: {}", cells_text(t));
        }
    }
}

pub fn certify(args: &CertifyArgs) -> CmdResult {
    let sq = read_square(&args.path)?;
    if args.kind.singletons {
        let report = bounds::singleton_lower_bound(&sq);
        if args.json {
            print_json(&report);
        } else {
            println!("singletons: {}", report.singleton_count);
            println!("all lines light: {}", if report.all_lll_side { "yes" } else { "no" });
            for l in &report.lines {
                let name = match l.line {
                    bounds::Line::Row(i) => format!("row {}", i + 1),
                    bounds::Line::Col(j) => format!("col {}", j + 1),
                };
                match l.bound {
                    Some(b) => println!("{name}: weight {}, heavy, singletons >= {b}", l.weight),
                    None => println!("{name}: weight {}, light", l.weight),
                }
            }
        }
        return Ok(0);
    }
    let cert = if args.kind.thresholds {
        bounds::threshold_checks(&sq)
    } else {
        let scan = if args.full_scan { PairScan::Full } else { PairScan::TopTwo };
        bounds::lll_certificate_with(&sq, scan)
    };
    if args.json {
        print_json(&cert);
    } else {
        print_certificate(&cert);
    }
    Ok(if cert.certified { 0 } else { 1 })
}

fn print_certificate(cert: &BoundCertificate) {
    let kind = serde_json::to_value(cert.kind).expect("serializable");
    println!("certified: {} ({})", if cert.certified { "yes" } else { "no" }, kind.as_str().unwrap_or("?"));
    if let Some(w) = &cert.witness {
        let [[a, b], [c, d]] = w.cells;
        println!(
            "heaviest pair: ({a},{b}) ({c},{d}) symbol {}, weight sum {}: 64*w = {} vs 27n(n-1) = {}",
            w.symbol, w.weight_sum, w.lhs, w.rhs
        );
    }
    for t in &cert.thresholds {
        let kind = serde_json::to_value(t.kind).expect("serializable");
        println!(
            "{}: {}: {} vs {} ({})",
            kind.as_str().unwrap_or("?"),
            t.relation,
            t.lhs,
            t.rhs,
            if t.holds { "holds" } else { "fails" }
        );
    }
}

pub fn decompose(path: &str, json: bool) -> CmdResult {
    let sq = read_square(path)?;
    let triples = |ts: &[Transversal]| ts.iter().map(|t| t.triples(&sq)).collect::<Vec<_>>();
    match solvers::decompose_into_transversals(&sq) {
        Decomposition::Found(ts) => {
            if json {
                print_json(&json!({ "outcome": "found", "transversals": triples(&ts) }));
            } else {
                println!("outcome: found");
                for t in triples(&ts) {
                    println!("transversal: {}", cells_text(&t));
                }
            }
            Ok(0)
        }
        Decomposition::Infeasible { max_disjoint, packing } => {
            if json {
                print_json(&json!({
                    "outcome": "infeasible",
                    "max_disjoint": max_disjoint,
                    "packing": triples(&packing),
                }));
            } else {
                println!("outcome: infeasible");
                println!("max disjoint transversals: {max_disjoint}");
                for t in triples(&packing) {
                    println!("transversal: {}", cells_text(&t));
                }
            }
            Ok(1)
        }
    }
}

pub fn l_number(args: &LNumberArgs) -> CmdResult {
    if args.order == 0 {
        return Err(CliError::usage("--order must be positive"));
    }
    let limits = SearchLimits {
        max_nodes: args.limits.max_nodes,
        deadline: deadline(&args.limits),
        jobs: args.limits.jobs,
    };
    let res = if args.star {
        extremal::compute_l_star(args.order, &limits)?
    } else {
        extremal::compute_l(args.order, &limits)?
    };
    if let (Some(path), Some(w)) = (&args.witness, &res.witness) {
        write_out(Some(path), &w.to_text())?;
    }
    if args.json {
        print_json(&res);
    } else {
        let name = if args.star { "l*" } else { "l" };
        println!("{name}({}) = {}", res.n, res.value);
        println!("raw value: {}", res.raw_value);
        println!("exhaustive: {}", res.exhaustive);
        println!("classes: {}", res.classes);
        if let Some(w) = &res.witness {
            print!("witness ({} symbols):\n{}", w.symbol_count(), w.to_text());
        }
    }
    Ok(if res.exhaustive { 0 } else { 3 })
}

#[derive(Serialize)]
struct EnumerationSummary {
    order: usize,
    classes: usize,
    by_symbol_count: BTreeMap<usize, usize>,
    transversal_free_counts: BTreeMap<usize, usize>,
    nodes: u64,
    complete: bool,
}

pub fn enumerate(args: &EnumerateArgs) -> CmdResult {
    let n = args.order;
    let cfg = EnumerationConfig {
        max_nodes: args.limits.max_nodes,
        deadline: deadline(&args.limits),
        jobs: args.limits.jobs,
        ..EnumerationConfig::new(n).symbols(args.min_symbols.unwrap_or(n), args.max_symbols.unwrap_or(n * n))
    };
    let filter: Option<PrefixFilter<'_>> = args.lll_certified.then_some(&bounds::lll_prefix_feasible);
    let res = extremal::enumerate(&cfg, filter)?;
    let squares: Vec<&Square> = res
        .squares
        .iter()
        .filter(|s| !args.lll_certified || bounds::lll_certificate(s).certified)
        .collect();
    let mut summary = EnumerationSummary {
        order: n,
        classes: squares.len(),
        by_symbol_count: BTreeMap::new(),
        transversal_free_counts: BTreeMap::new(),
        nodes: res.nodes,
        complete: res.complete,
    };
    for s in &squares {
        *summary.by_symbol_count.entry(s.symbol_count()).or_default() += 1;
        let tf = summary.transversal_free_counts.entry(s.symbol_count()).or_default();
        if !solvers::has_transversal(s) {
            *tf += 1;
        }
    }
    if args.json {
        let mut doc = serde_json::to_value(&summary).expect("serializable");
        if !args.summary_only {
            doc["squares"] = serde_json::to_value(&squares).expect("serializable");
        }
        print_json(&doc);
    } else {
        let mut out = String::new();
        if !args.summary_only {
            for s in &squares {
                out.push_str(&s.to_text());
                out.push('\n');
            }
        }
        let _ = writeln!(out, "# summary: {}", serde_json::to_string(&summary).expect("serializable"));
        print!("{out}");
    }
    Ok(if res.complete { 0 } else { 3 })
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("this kind needs {flag}")))
}

pub fn construct(args: &ConstructArgs) -> CmdResult {
    let text = match args.kind {
        ConstructKind::Cyclic => {
            let n = need(args.order, "--order")?;
            if n == 0 {
                return Err(CliError::usage("--order must be positive"));
            }
            Square::cyclic(n).to_text()
        }
        ConstructKind::Random => {
            let n = need(args.order, "--order")?;
            let k = need(args.symbols, "--symbols")?;
            extremal::random_gls(n, k, args.seed)?.to_text()
        }
        ConstructKind::LstarGap => {
            let path = args
                .input
                .as_deref()
                .ok_or_else(|| CliError::usage("lstar-gap needs --input"))?;
            extremal::lstar_gap(&read_square(path)?)?.to_text()
        }
        ConstructKind::Coloring => {
            let m = need(args.vertices, "--vertices")?;
            let c = need(args.colors, "--colors")?;
            extremal::proper_coloring(m, c, args.seed)?.to_text()
        }
        ConstructKind::TransversalFree => {
            let n = need(args.order, "--order")?;
            extremal::transversal_free_search(n, args.iterations, args.seed)?.to_text()
        }
    };
    write_out(args.output.as_deref(), &text)?;
    Ok(0)
}

pub fn reduce(args: &ReduceArgs) -> CmdResult {
    let g = read_graph(&args.path)?;
    let sq = extremal::antiramsey_reduce(&g)?;
    let extraction = if args.extract {
        match solvers::find_transversal_exact(&sq, SearchMode::First).outcome {
            solvers::Outcome::Found(t) => Some(extremal::extract_two_factor(&t, &g)?),
            _ => None,
        }
    } else {
        None
    };
    let edges_1based = |x: &extremal::TwoFactorExtraction| {
        x.edges
            .iter()
            .map(|&(i, j, c)| [i as u64 + 1, j as u64 + 1, c as u64])
            .collect::<Vec<_>>()
    };
    if args.json {
        let mut doc = json!({ "order": sq.n(), "symbol_count": sq.symbol_count(), "square": &sq });
        if args.extract {
            doc["extraction"] = match &extraction {
                Some(x) => json!({
                    "edges": edges_1based(x),
                    "dropped_vertex": x.dropped_vertex.map(|v| v + 1),
                    "colors_distinct": x.colors_distinct,
                    "degree_two": x.degree_two,
                    "vertices_covered": x.vertices_covered,
                }),
                None => serde_json::Value::Null,
            };
        }
        if let Some(path) = &args.output {
            write_out(Some(path), &sq.to_text())?;
        }
        print_json(&doc);
    } else {
        write_out(args.output.as_deref(), &sq.to_text())?;
        if args.extract {
            match &extraction {
                Some(x) => {
                    let edges: Vec<String> = edges_1based(x)
                        .iter()
                        .map(|[i, j, c]| format!("{i}-{j}:{c}"))
                        .collect();
                    println!("# extracted edges: {}", edges.join(" "));
                    println!(
                        "# colors distinct: {}, degree two: {}, vertices covered: {}",
                        x.colors_distinct, x.degree_two, x.vertices_covered
                    );
                }
                None => println!("# no rainbow transversal"),
            }
        }
    }
    Ok(if args.extract && extraction.is_none() { 1 } else { 0 })
}

pub fn rainbow(args: &RainbowArgs) -> CmdResult {
    let g = read_graph(&args.path)?;
    let m = g.m();
    let min_vertices = args
        .min_vertices
        .unwrap_or(if args.factor == 1 { m } else { m.saturating_sub(1) });
    let res = extremal::rainbow_factor_search(&g, args.factor, min_vertices)?;
    let edges: Option<Vec<[u64; 3]>> = match &res.outcome {
        FactorOutcome::Found(es) => Some(
            es.iter()
                .map(|&(i, j)| [i as u64 + 1, j as u64 + 1, g.color(i, j) as u64])
                .collect(),
        ),
        FactorOutcome::NotFound => None,
    };
    if args.json {
        print_json(&json!({
            "outcome": if edges.is_some() { "found" } else { "not_found" },
            "factor": args.factor,
            "min_vertices": min_vertices,
            "edges": edges,
            "nodes": res.nodes,
        }));
    } else {
        match &edges {
            Some(es) => {
                println!("outcome: found");
                let list: Vec<String> = es.iter().map(|[i, j, c]| format!("{i}-{j}:{c}")).collect();
                println!("edges: {}", list.join(" "));
            }
            None => println!("outcome: not_found"),
        }
        println!("nodes: {}", res.nodes);
    }
    Ok(if edges.is_some() { 0 } else { 1 })
}
