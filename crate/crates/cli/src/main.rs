//! `qindex`: families, spectra, subgraph queries and verification campaigns.

use std::fs::File;
use std::io::BufReader;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qindex_core::graph::graph6;
use qindex_core::spectral::{bound_report, q_index};
use qindex_core::structure::{check_peeling_lemma, classify_exceptional, peel_to_min_degree};
use qindex_core::subgraph::{longest_cycle, longest_path, matching_number, SearchOptions};
use qindex_core::verify::{
    check, check_bounds_universal, explore_conjecture, write_csv, CheckOptions, ConjectureVariant, Source, TheoremId,
    VerificationReport,
};
use qindex_core::{fixtures, Adjacency, FamilyKind, FamilySpec, SparseGraph, DEFAULT_TOL};

#[derive(Parser, Debug)]
#[command(name = "qindex", version, about = "Signless Laplacian Q-index toolkit")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Build a family member and print it.
    Family(FamilyArgs),
    /// Q-index of a graph.
    Q(GraphArgs),
    /// Merris and Das upper bounds, the closed form for S(n,k) and the bound chain.
    Bounds(GraphArgs),
    /// Longest path with a witness.
    LongestPath(GraphArgs),
    /// Longest cycle with a witness.
    LongestCycle(GraphArgs),
    /// Maximum matching.
    Matching(GraphArgs),
    /// First exceptional family the graph belongs to.
    Classify(GraphArgs),
    /// Minimum-degree peeling and the peeling lemma verdict.
    Peel(GraphArgs),
    /// Exhaustive theorem check over all graphs of the given orders.
    Verify(VerifyArgs),
    /// Exhaustive search for counterexamples to the cycle conjecture.
    Explore(ExploreArgs),
    /// Run the built-in worked examples.
    Selftest(OutputArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FamilyParams {
    /// Family kind: S, SPlus, L, Book or DoubleL.
    #[arg(long)]
    kind: Option<FamilyKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Graph6,
    Edges,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[command(flatten)]
    params: FamilyParams,
    #[arg(long, value_enum, default_value = "graph6")]
    emit: Emit,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// A single graph in graph6.
    #[arg(long, conflicts_with_all = ["file", "kind"])]
    graph6: Option<String>,
    /// A graph6 file, one graph per line.
    #[arg(long, conflicts_with = "kind")]
    file: Option<PathBuf>,
    #[command(flatten)]
    params: FamilyParams,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Accept undecided path/cycle searches on large graphs (results are marked inexact).
    #[arg(long)]
    heuristic: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CampaignArgs {
    /// Order or inclusive range such as `5..9`.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Read graphs from a graph6 file instead of enumerating.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    connected_only: bool,
    #[arg(long, env = "QINDEX_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// JSON report path, also used as checkpoint; a CSV summary is written beside it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    heuristic: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// EG, BES_i, BES_ii, YU_iii, MT_i, MT_ii, AS, ASP, PROP_DOM_i, PROP_DOM_ii, LEM_PEEL or BOUNDS.
    #[arg(long)]
    theorem: TheoremId,
    /// Evaluate outside the statement's hypotheses; the report is flagged.
    #[arg(long)]
    extrapolate: bool,
    #[command(flatten)]
    campaign: CampaignArgs,
}

#[derive(Args, Debug)]
struct ExploreArgs {
    /// CONJ_i or CONJ_ii.
    #[arg(long, default_value = "CONJ_i")]
    theorem: TheoremId,
    #[command(flatten)]
    campaign: CampaignArgs,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

/// Errors that should be reported as misuse, with the verb's synopsis.
struct Usage(String);

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let verb = verb_name(&cli.verb);
    match run(cli.verb) {
        Ok(code) => code,
        Err(e) => match e.downcast::<Usage>() {
            Ok(Usage(msg)) => {
                let mut cmd = Cli::command();
                cmd.build();
                let sub = cmd.find_subcommand_mut(verb).expect("known verb");
                sub.error(clap::error::ErrorKind::ValueValidation, msg).print().ok();
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}

impl std::fmt::Debug for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Family(_) => "family",
        Verb::Q(_) => "q",
        Verb::Bounds(_) => "bounds",
        Verb::LongestPath(_) => "longest-path",
        Verb::LongestCycle(_) => "longest-cycle",
        Verb::Matching(_) => "matching",
        Verb::Classify(_) => "classify",
        Verb::Peel(_) => "peel",
        Verb::Verify(_) => "verify",
        Verb::Explore(_) => "explore",
        Verb::Selftest(_) => "selftest",
    }
}

fn run(verb: Verb) -> anyhow::Result<ExitCode> {
    match verb {
        Verb::Family(a) => family(a),
        Verb::Q(a) => per_graph(a, false, |g, a| {
            let r = q_index(g, a.tol)?;
            Ok(json!({ "q": r.q, "residual": r.residual, "iterations": r.iterations }))
        }),
        Verb::Bounds(a) => per_graph(a, false, |g, a| {
            let k = a.params.k.unwrap_or(1);
            Ok(serde_json::to_value(bound_report(g, k)?)?)
        }),
        Verb::LongestPath(a) => per_graph(a, false, |g, a| Ok(serde_json::to_value(longest_path(g, search(a))?)?)),
        Verb::LongestCycle(a) => per_graph(a, false, |g, a| Ok(serde_json::to_value(longest_cycle(g, search(a))?)?)),
        Verb::Matching(a) => per_graph(a, false, |g, _| {
            let (nu, cert) = matching_number(g);
            Ok(json!({ "matching_number": nu, "certificate": cert }))
        }),
        Verb::Classify(a) => per_graph(a, true, |g, a| {
            let compact = g.to_compact()?;
            Ok(serde_json::to_value(classify_exceptional(&compact, a.params.k.expect("checked"))?)?)
        }),
        Verb::Peel(a) => per_graph(a, true, |g, a| {
            let k = a.params.k.expect("checked");
            Ok(json!({
                "peeling": peel_to_min_degree(g, k)?,
                "lemma": check_peeling_lemma(g, k, search(a))?,
            }))
        }),
        Verb::Verify(a) => verify(a),
        Verb::Explore(a) => explore(a),
        Verb::Selftest(o) => selftest(o),
    }
}

fn search(a: &GraphArgs) -> SearchOptions {
    SearchOptions { heuristic: a.heuristic, ..SearchOptions::default() }
}

fn family_spec(p: &FamilyParams) -> anyhow::Result<FamilySpec> {
    let Some(kind) = p.kind else {
        return usage("--kind is required");
    };
    FamilySpec::from_parts(kind, p.n, p.k, p.t, p.s).or_else(|e| usage(e.to_string()))
}

fn family(a: FamilyArgs) -> anyhow::Result<ExitCode> {
    let spec = family_spec(&a.params)?;
    let g = spec.build_sparse()?;
    let g6 = g.to_compact().ok().map(|c| graph6::emit(&c));
    if a.out.json {
        let v = json!({
            "kind": spec.kind().to_string(),
            "spec": spec,
            "order": g.order(),
            "size": g.edge_count(),
            "graph6": g6,
            "edges": g.edge_list(),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(ExitCode::SUCCESS);
    }
    match a.emit {
        Emit::Graph6 => match g6 {
            Some(s) => println!("{s}"),
            None => return usage(format!("order {} is too large for graph6 output here; use --emit edges", g.order())),
        },
        Emit::Edges => {
            println!("{} {}", g.order(), g.edge_count());
            for (u, v) in g.edge_list() {
                println!("{u} {v}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_graphs(a: &GraphArgs) -> anyhow::Result<Vec<(String, SparseGraph)>> {
    if let Some(s) = &a.graph6 {
        let g = graph6::parse(s).or_else(|e| usage(e.to_string()))?;
        return Ok(vec![(s.trim().to_string(), SparseGraph::from(&g))]);
    }
    if let Some(path) = &a.file {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let graphs = graph6::read_all(BufReader::new(f)).or_else(|e| usage(e.to_string()))?;
        return Ok(graphs.iter().map(|g| (graph6::emit(g), SparseGraph::from(g))).collect());
    }
    if a.params.kind.is_some() {
        let spec = family_spec(&a.params)?;
        return Ok(vec![(format!("{spec:?}"), spec.build_sparse()?)]);
    }
    usage("one of --graph6, --file or --kind is required")
}

fn per_graph<F>(a: GraphArgs, needs_k: bool, f: F) -> anyhow::Result<ExitCode>
where
    F: Fn(&SparseGraph, &GraphArgs) -> anyhow::Result<Value>,
{
    if needs_k && a.params.k.is_none() {
        return usage("--k is required");
    }
    if a.tol <= 0.0 || a.tol.is_nan() {
        return usage(format!("--tol must be positive, got {}", a.tol));
    }
    let graphs = load_graphs(&a)?;
    let mut results = Vec::with_capacity(graphs.len());
    for (label, g) in &graphs {
        let v = f(g, &a).with_context(|| format!("graph {label}"))?;
        results.push((label, v));
    }
    if a.out.json {
        let vals: Vec<Value> = results
            .into_iter()
            .map(|(label, mut v)| {
                if let Value::Object(m) = &mut v {
                    m.insert("graph".into(), Value::String(label.clone()));
                }
                v
            })
            .collect();
        let out = if a.graph6.is_some() || a.file.is_none() { vals[0].clone() } else { Value::Array(vals) };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for (label, v) in results {
            println!("{label}");
            print_table(&v, 1);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_table(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (key, val) in m {
                match val {
                    Value::Object(_) => {
                        println!("{pad}{key}");
                        print_table(val, indent + 1);
                    }
                    _ => println!("{pad}{key:<20} {}", scalar(val)),
                }
            }
        }
        _ => println!("{pad}{}", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn campaign_options(c: &CampaignArgs, extrapolate: bool) -> anyhow::Result<CheckOptions> {
    if c.tol <= 0.0 || c.tol.is_nan() {
        return usage(format!("--tol must be positive, got {}", c.tol));
    }
    Ok(CheckOptions {
        workers: c.workers,
        tol: c.tol,
        search: SearchOptions { heuristic: c.heuristic, ..SearchOptions::default() },
        extrapolate,
        connected_only: c.connected_only,
        ..CheckOptions::default()
    })
}

fn report_path(out: &Path, n: usize, many: bool) -> PathBuf {
    if !many {
        return out.to_path_buf();
    }
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}-n{n}.json"))
}

fn campaign<F>(c: &CampaignArgs, mut opts: CheckOptions, mut one: F) -> anyhow::Result<Vec<VerificationReport>>
where
    F: FnMut(usize, &Source, &CheckOptions) -> qindex_core::Result<VerificationReport>,
{
    let source = match &c.file {
        Some(p) => Source::Graph6File(p.clone()),
        None => Source::Enumeration,
    };
    let many = c.n.start() != c.n.end();
    let mut reports = Vec::new();
    for n in c.n.clone() {
        opts.checkpoint = c.out.as_deref().map(|o| report_path(o, n, many));
        let r = one(n, &source, &opts).map_err(|e| match e {
            qindex_core::Error::EnumerationRange { .. }
            | qindex_core::Error::OrderOutOfRange { .. }
            | qindex_core::Error::InvalidArgument(_)
            | qindex_core::Error::Graph6(_) => Usage(e.to_string()).into(),
            other => anyhow::Error::from(other),
        })?;
        log::info!("{} n={} k={}: {} graphs, {} violations", r.theorem, r.n, r.k, r.graphs_checked, r.violations.len());
        reports.push(r);
    }
    if let Some(out) = &c.out {
        write_csv(&out.with_extension("csv"), &reports)?;
    }
    if c.json {
        let v = if many { serde_json::to_value(&reports)? } else { serde_json::to_value(&reports[0])? };
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("{:<12} {:>3} {:>3} {:>10} {:>10} {:>10} {:>6} {:<14}", "theorem", "n", "k", "graphs", "hits", "violations", "exact", "status");
        for r in &reports {
            let status = serde_json::to_value(r.status)?;
            println!(
                "{:<12} {:>3} {:>3} {:>10} {:>10} {:>10} {:>6} {:<14}{}",
                r.theorem.as_str(),
                r.n,
                r.k,
                r.graphs_checked,
                r.hypothesis_hits,
                r.violations.len(),
                r.exact,
                scalar(&status),
                if r.extrapolated { " (extrapolated)" } else { "" }
            );
            for v in &r.violations {
                println!("  {}  {}", v.graph6, v.diagnostics);
            }
            if let Some(note) = &r.note {
                println!("  note: {note}");
            }
        }
    }
    Ok(reports)
}

fn verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    if a.theorem.is_conjecture() {
        return usage(format!("{} is a conjecture; use `explore`", a.theorem));
    }
    let opts = campaign_options(&a.campaign, a.extrapolate)?;
    let theorem = a.theorem;
    let reports = if theorem == TheoremId::Bounds {
        if a.campaign.file.is_some() {
            let k = a.campaign.k.unwrap_or(0);
            campaign(&a.campaign, opts, |n, src, o| check(theorem, n, k, src, o))?
        } else {
            campaign(&a.campaign, opts, |n, _, o| check_bounds_universal(n, o))?
        }
    } else {
        let Some(k) = a.campaign.k else {
            return usage("--k is required");
        };
        campaign(&a.campaign, opts, |n, src, o| check(theorem, n, k, src, o))?
    };
    Ok(if reports.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn explore(a: ExploreArgs) -> anyhow::Result<ExitCode> {
    let variant = match a.theorem {
        TheoremId::ConjI => ConjectureVariant::I,
        TheoremId::ConjII => ConjectureVariant::II,
        other => return usage(format!("{other} is not a conjecture; use `verify`")),
    };
    let Some(k) = a.campaign.k else {
        return usage("--k is required");
    };
    let opts = campaign_options(&a.campaign, false)?;
    campaign(&a.campaign, opts, |n, src, o| explore_conjecture(variant, n, k, src, o))?;
    Ok(ExitCode::SUCCESS)
}

fn selftest(o: OutputArgs) -> anyhow::Result<ExitCode> {
    let results = fixtures::run_all();
    let failed = results.iter().filter(|r| !r.passed).count();
    if o.json {
        println!("{}", serde_json::to_string_pretty(&results)?);
    } else {
        for r in &results {
            println!("{} {}", if r.passed { "ok  " } else { "FAIL" }, r.name);
            if let Some(d) = &r.detail {
                println!("     {d}");
            }
        }
        println!("{} passed, {failed} failed", results.len() - failed);
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("8").unwrap(), 8..=8);
        assert_eq!(parse_range("5..9").unwrap(), 5..=9);
        assert_eq!(parse_range("5..=9").unwrap(), 5..=9);
        assert!(parse_range("9..5").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
