//! Exhaustive checks of the theorems over all graphs of a given order.
//!
//! A campaign walks a stream of graphs (the isomorph-free enumeration or a
//! graph6 file) in fixed-size units. Units are evaluated in parallel and
//! their tallies merged in unit order, so reports do not depend on the
//! worker count. The partial report is written back to disk periodically
//! and a later run with the same parameters resumes from it.

pub mod enumerate;
mod report;
mod theorems;

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::connectivity::is_connected;
use crate::graph::{graph6, Graph};
use crate::spectral::DEFAULT_TOL;
use crate::subgraph::SearchOptions;
use enumerate::{extend_children, graphs_of_order, MAX_ENUM_ORDER};
use theorems::Context;

pub use report::{csv_row, write_csv, Resume, Status, VerificationReport, Violation, CSV_HEADER};
pub use theorems::TheoremId;

/// Graphs per work unit when the level is held in memory.
const LEVEL_UNIT: usize = 2048;
/// Parents per work unit when children are generated on the fly.
const PARENT_UNIT: usize = 32;

/// Where the graphs come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Enumeration,
    Graph6File(PathBuf),
}

impl Source {
    fn label(&self) -> String {
        match self {
            Source::Enumeration => "enumeration".into(),
            Source::Graph6File(p) => format!("file:{}", p.display()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    pub tol: f64,
    pub search: SearchOptions,
    /// Evaluate outside the hypothesis gate, flagging the report.
    pub extrapolate: bool,
    pub connected_only: bool,
    /// Report file used for checkpoints and the final result.
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            workers: 0,
            tol: DEFAULT_TOL,
            search: SearchOptions::default(),
            extrapolate: false,
            connected_only: false,
            checkpoint: None,
            checkpoint_every: 1_000_000,
        }
    }
}

/// The two clauses of the cycle conjecture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureVariant {
    I,
    II,
}

impl ConjectureVariant {
    pub fn theorem(self) -> TheoremId {
        match self {
            ConjectureVariant::I => TheoremId::ConjI,
            ConjectureVariant::II => TheoremId::ConjII,
        }
    }
}

/// Evaluates `theorem` at `(n, k)` on every graph from `source`.
pub fn check(theorem: TheoremId, n: usize, k: usize, source: &Source, opts: &CheckOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::empty(theorem, n, k, source.label(), opts.connected_only, opts.tol);
    if let Some(reason) = theorem.gate(n, k) {
        if !opts.extrapolate {
            report.status = Status::NotApplicable;
            report.resume = None;
            report.note = Some(format!("{theorem} at n={n}, k={k} is outside its hypotheses: {reason}"));
            write_final(&report, opts)?;
            return Ok(report);
        }
        report.extrapolated = true;
        report.note = Some(format!("extrapolated: {reason}"));
    }
    run(report, source, opts)
}

/// Explores the cycle conjecture; violations are findings, never failures.
pub fn explore_conjecture(
    variant: ConjectureVariant,
    n: usize,
    k: usize,
    source: &Source,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    let theorem = variant.theorem();
    let mut report = VerificationReport::empty(theorem, n, k, source.label(), opts.connected_only, opts.tol);
    if let Some(reason) = theorem.gate(n, k) {
        report.status = Status::NotApplicable;
        report.resume = None;
        report.note = Some(reason);
        write_final(&report, opts)?;
        return Ok(report);
    }
    if n < 2 * k + 3 {
        report.note = Some(format!("n={n} is below plausible threshold 2k+3={}", 2 * k + 3));
    }
    run(report, source, opts)
}

/// Merris, Das and the Rayleigh identity on every graph of order `n`.
pub fn check_bounds_universal(n: usize, opts: &CheckOptions) -> Result<VerificationReport> {
    check(TheoremId::Bounds, n, 0, &Source::Enumeration, opts)
}

/// Re-evaluates one graph; the diagnostics if it violates the statement.
pub fn replay(theorem: TheoremId, k: usize, graph6_text: &str, opts: &CheckOptions) -> Result<Option<Value>> {
    let g = graph6::parse(graph6_text)?;
    let ctx = Context::new(theorem, g.n(), k, opts.tol, opts.search)?;
    Ok(ctx.evaluate(&g)?.violation)
}

/// Whether every violation in `report` reproduces in isolation.
pub fn replay_report(report: &VerificationReport, opts: &CheckOptions) -> Result<bool> {
    let opts = CheckOptions { tol: report.tol, ..opts.clone() };
    for v in &report.violations {
        if replay(report.theorem, report.k, &v.graph6, &opts)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Units {
    Level(Arc<Vec<Graph>>),
    Parents(Arc<Vec<Graph>>),
}

impl Units {
    fn open(n: usize, source: &Source) -> Result<Units> {
        match source {
            Source::Enumeration => {
                if n == 0 || n > MAX_ENUM_ORDER {
                    return Err(Error::EnumerationRange { n, max: MAX_ENUM_ORDER });
                }
                match graphs_of_order(n) {
                    Ok(level) => Ok(Units::Level(level)),
                    Err(_) => Ok(Units::Parents(graphs_of_order(n - 1)?)),
                }
            }
            Source::Graph6File(path) => {
                let graphs = graph6::read_all(BufReader::new(File::open(path)?))?;
                if let Some(g) = graphs.iter().find(|g| g.n() != n) {
                    return Err(Error::InvalidArgument(format!(
                        "{} contains a graph of order {} but n={n} was requested",
                        path.display(),
                        g.n()
                    )));
                }
                Ok(Units::Level(Arc::new(graphs)))
            }
        }
    }

    fn count(&self) -> u64 {
        match self {
            Units::Level(v) => v.len().div_ceil(LEVEL_UNIT) as u64,
            Units::Parents(p) => p.len().div_ceil(PARENT_UNIT) as u64,
        }
    }

    fn graphs(&self, i: u64) -> Vec<Graph> {
        let i = i as usize;
        match self {
            Units::Level(v) => v[i * LEVEL_UNIT..((i + 1) * LEVEL_UNIT).min(v.len())].to_vec(),
            Units::Parents(p) => {
                let mut out = Vec::new();
                for parent in &p[i * PARENT_UNIT..((i + 1) * PARENT_UNIT).min(p.len())] {
                    extend_children(parent, &mut out);
                }
                out
            }
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    hits: u64,
    violations: Vec<Violation>,
    inexact: bool,
}

fn evaluate_unit(ctx: &Context, graphs: Vec<Graph>, connected_only: bool) -> Result<Tally> {
    let mut t = Tally::default();
    for g in graphs {
        if connected_only && !is_connected(&g) {
            continue;
        }
        t.checked += 1;
        let o = ctx.evaluate(&g)?;
        t.inexact |= !o.exact;
        if o.hit {
            t.hits += 1;
        }
        if let Some(d) = o.violation {
            t.violations.push(Violation { graph6: graph6::emit(&g), diagnostics: d });
        }
    }
    Ok(t)
}

fn run(mut report: VerificationReport, source: &Source, opts: &CheckOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let (theorem, n, k) = (report.theorem, report.n, report.k);
    if let Some(saved) = load_checkpoint(opts.checkpoint.as_deref(), &report)? {
        log::info!("resuming {theorem} n={n} k={k} after {} units", saved.resume.as_ref().map_or(0, |r| r.units_done));
        report = saved;
    }
    let ctx = Context::new(theorem, n, k, opts.tol, opts.search)?;
    let units = Units::open(n, source)?;
    let total = units.count();
    let mut done = report.resume.as_ref().map_or(0, |r| r.units_done);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let batch = (pool.current_num_threads() as u64 * 4).max(1);
    let mut since_checkpoint = 0u64;
    let elapsed_before = report.wall_time_s;
    while done < total {
        let end = (done + batch).min(total);
        let tallies: Vec<Result<Tally>> = pool.install(|| {
            (done..end).into_par_iter().map(|i| evaluate_unit(&ctx, units.graphs(i), opts.connected_only)).collect()
        });
        for t in tallies {
            let t = t?;
            report.graphs_checked += t.checked;
            report.hypothesis_hits += t.hits;
            report.exact &= !t.inexact;
            since_checkpoint += t.checked;
            report.violations.extend(t.violations);
        }
        done = end;
        report.resume = Some(Resume { units_done: done });
        if let Some(path) = opts.checkpoint.as_deref() {
            if since_checkpoint >= opts.checkpoint_every && done < total {
                report.wall_time_s = elapsed_before + start.elapsed().as_secs_f64();
                report.write(path)?;
                since_checkpoint = 0;
                log::info!("checkpoint: {theorem} n={n} k={k}, {} graphs", report.graphs_checked);
            }
        }
    }
    report.status = Status::Complete;
    report.resume = None;
    report.wall_time_s = elapsed_before + start.elapsed().as_secs_f64();
    log::info!(
        "{theorem} n={n} k={k}: {} graphs, {} hits, {} violations",
        report.graphs_checked,
        report.hypothesis_hits,
        report.violations.len()
    );
    write_final(&report, opts)?;
    Ok(report)
}

fn load_checkpoint(path: Option<&Path>, fresh: &VerificationReport) -> Result<Option<VerificationReport>> {
    let Some(path) = path.filter(|p| p.exists()) else { return Ok(None) };
    let Ok(saved) = VerificationReport::read(path) else { return Ok(None) };
    if saved.status != Status::InProgress {
        return Ok(None);
    }
    if !saved.same_campaign(fresh) {
        return Err(Error::Checkpoint(format!(
            "{} holds an unfinished {} n={} k={} campaign",
            path.display(),
            saved.theorem,
            saved.n,
            saved.k
        )));
    }
    Ok(Some(saved))
}

fn write_final(report: &VerificationReport, opts: &CheckOptions) -> Result<()> {
    if let Some(path) = opts.checkpoint.as_deref() {
        report.write(path)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eg_small() {
        let r = check(TheoremId::Eg, 6, 2, &Source::Enumeration, &CheckOptions::default()).unwrap();
        assert_eq!(r.graphs_checked, 156);
        assert!(r.passed() && r.exact);
        assert_eq!(r.status, Status::Complete);
    }

    #[test]
    fn out_of_gate_is_reported() {
        let r = check(TheoremId::MtI, 6, 1, &Source::Enumeration, &CheckOptions::default()).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert_eq!(r.graphs_checked, 0);
        assert!(r.note.is_some());
        let opts = CheckOptions { extrapolate: true, ..CheckOptions::default() };
        let r = check(TheoremId::MtI, 6, 1, &Source::Enumeration, &opts).unwrap();
        assert!(r.extrapolated);
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.graphs_checked, 156);
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let one = CheckOptions { workers: 1, ..CheckOptions::default() };
        let many = CheckOptions { workers: 3, ..CheckOptions::default() };
        let a = check(TheoremId::Asp, 8, 2, &Source::Enumeration, &one).unwrap();
        let b = check(TheoremId::Asp, 8, 2, &Source::Enumeration, &many).unwrap();
        assert_eq!((a.graphs_checked, a.hypothesis_hits, &a.violations), (b.graphs_checked, b.hypothesis_hits, &b.violations));
    }

    #[test]
    fn connected_only_filters() {
        let opts = CheckOptions { connected_only: true, ..CheckOptions::default() };
        let r = check(TheoremId::Eg, 5, 1, &Source::Enumeration, &opts).unwrap();
        assert_eq!(r.graphs_checked, 21);
    }
}
