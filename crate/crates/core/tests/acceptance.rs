//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{naive_matching, naive_path_cycle};

use qindex_core::spectral::{bound_chain, q_closed_form_s, q_index};
use qindex_core::structure::{check_peeling_lemma, decorated_s_plus, PeelVerdict};
use qindex_core::subgraph::{longest_cycle_order, longest_path_order, matching_number, SearchOptions};
use qindex_core::verify::enumerate::enumerate_graphs;
use qindex_core::verify::{
    check, check_bounds_universal, explore_conjecture, replay_report, CheckOptions, ConjectureVariant, Source, Status,
    TheoremId, VerificationReport,
};
use qindex_core::{FamilySpec, DEFAULT_TOL};

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: String) -> Self {
        Outcome { passed, summary, details: Vec::new() }
    }
}

/// Totals over a set of campaign reports.
#[derive(Default)]
struct Tally {
    graphs: u64,
    hits: u64,
    violations: Vec<String>,
    incomplete: Vec<String>,
    inexact: Vec<String>,
}

impl Tally {
    fn add(&mut self, r: &VerificationReport) {
        let tag = format!("{} n={} k={}", r.theorem, r.n, r.k);
        self.graphs += r.graphs_checked;
        self.hits += r.hypothesis_hits;
        if r.status != Status::Complete {
            self.incomplete.push(format!("{tag}: {:?} {}", r.status, r.note.clone().unwrap_or_default()));
        }
        if !r.exact {
            self.inexact.push(tag.clone());
        }
        for v in &r.violations {
            self.violations.push(format!("{tag}: {} {}", v.graph6, v.diagnostics));
        }
    }

    fn clean(&self) -> bool {
        self.violations.is_empty() && self.incomplete.is_empty() && self.inexact.is_empty()
    }

    fn outcome(self, what: &str) -> Outcome {
        let summary = format!(
            "{what}: {} graphs, {} hypothesis hits, {} violations",
            self.graphs,
            self.hits,
            self.violations.len()
        );
        let mut o = Outcome::new(self.clean(), summary);
        o.details.extend(self.violations.iter().map(|v| format!("violation {v}")));
        o.details.extend(self.incomplete.iter().map(|v| format!("incomplete {v}")));
        o.details.extend(self.inexact.iter().map(|v| format!("inexact {v}")));
        o
    }
}

fn opts(connected_only: bool) -> CheckOptions {
    CheckOptions { connected_only, ..CheckOptions::default() }
}

fn campaigns(runs: &[(TheoremId, usize, usize, bool)]) -> Result<Tally, String> {
    let mut t = Tally::default();
    for &(theorem, n, k, connected) in runs {
        let r = check(theorem, n, k, &Source::Enumeration, &opts(connected)).map_err(|e| e.to_string())?;
        t.add(&r);
    }
    Ok(t)
}

fn closed_form_agreement() -> Result<Outcome, String> {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let mut count = 0;
    for k in 1..=10 {
        for n in k + 1..=200 {
            let g = FamilySpec::S { n, k }.build_sparse().map_err(|e| e.to_string())?;
            let q = q_index(&g, DEFAULT_TOL).map_err(|e| e.to_string())?.q;
            let err = (q - q_closed_form_s(n, k)).abs();
            worst = worst.max(err);
            count += 1;
            if err > 1e-8 {
                bad.push(format!("S({n},{k}): error {err:e}"));
            }
        }
    }
    let mut o = Outcome::new(bad.is_empty(), format!("{count} pairs (n,k), max error {worst:.2e} (tolerance 1e-8)"));
    o.details = bad;
    Ok(o)
}

fn bound_chain_reproduction() -> Result<Outcome, String> {
    let mut min_gap = f64::INFINITY;
    let mut bad = Vec::new();
    for k in 2..=10 {
        for n in 7 * k * k..=7 * k * k + 100 {
            let q = q_closed_form_s(n, k);
            let (lower, floor) = bound_chain(n, k).map_err(|e| e.to_string())?;
            let gap = (q - lower).min(lower - floor);
            min_gap = min_gap.min(gap);
            if gap <= 1e-9 {
                bad.push(format!("n={n} k={k}: q={q} lower={lower} floor={floor}"));
            }
        }
    }
    let mut o = Outcome::new(bad.is_empty(), format!("k in 2..=10, n in 7k^2..=7k^2+100, smallest margin {min_gap:.3e} (> 1e-9)"));
    o.details = bad;
    Ok(o)
}

fn universal_bounds() -> Result<Outcome, String> {
    let mut t = Tally::default();
    for n in 1..=9 {
        t.add(&check_bounds_universal(n, &opts(false)).map_err(|e| e.to_string())?);
    }
    Ok(t.outcome("Merris, Das, Rayleigh on all graphs n <= 9"))
}

fn erdos_gallai() -> Result<Outcome, String> {
    let runs: Vec<_> = (3..=9).flat_map(|n| (1..=n - 2).map(move |k| (TheoremId::Eg, n, k, false))).collect();
    Ok(campaigns(&runs)?.outcome("EG, n <= 9, 1 <= k <= n-2"))
}

fn main_theorem_k1() -> Result<Outcome, String> {
    let runs: Vec<_> = (7..=9).flat_map(|n| [(TheoremId::MtI, n, 1, false), (TheoremId::MtII, n, 1, false)]).collect();
    Ok(campaigns(&runs)?.outcome("clauses (i) and (ii), k = 1, n in 7..=9"))
}

fn bes() -> Result<Outcome, String> {
    let mut runs = Vec::new();
    for k in 1..=2usize {
        let start = (5 * k + 4).div_ceil(2) + 1;
        for n in start..=9 {
            runs.push((TheoremId::BesI, n, k, true));
            runs.push((TheoremId::BesII, n, k, true));
        }
    }
    Ok(campaigns(&runs)?.outcome("connected, k in {1,2}, n from ceil((5k+4)/2)+1 to 9"))
}

fn stability() -> Result<Outcome, String> {
    let mut runs: Vec<_> = (5..=9).map(|n| (TheoremId::As, n, 2, true)).collect();
    runs.extend((7..=9).map(|n| (TheoremId::Asp, n, 2, true)));
    Ok(campaigns(&runs)?.outcome("k = 2, connected, P6-free n in 5..=9 and P7-free n in 7..=9"))
}

fn yu() -> Result<Outcome, String> {
    let runs: Vec<_> = (5..=9).map(|n| (TheoremId::YuIII, n, 1, false)).collect();
    Ok(campaigns(&runs)?.outcome("clause (iii), k = 1, n in 5..=9"))
}

fn dominating() -> Result<Outcome, String> {
    let runs: Vec<_> =
        (7..=9).flat_map(|n| [(TheoremId::PropDomI, n, 1, false), (TheoremId::PropDomII, n, 1, false)]).collect();
    Ok(campaigns(&runs)?.outcome("k = 1, n in 7..=9"))
}

fn peeling() -> Result<Outcome, String> {
    let mut details = Vec::new();
    // Every enumerated order is below 7k^2 = 28: only the loop bound is asserted there,
    // the full conclusion is an observation.
    let k = 2;
    let (mut applicable, mut over_bound, mut observations) = (0u64, Vec::new(), Vec::new());
    for n in 1..=9 {
        for g in enumerate_graphs(n, false).map_err(|e| e.to_string())? {
            let c = check_peeling_lemma(&g, k, SearchOptions::default()).map_err(|e| e.to_string())?;
            let Some(p) = &c.peeling else { continue };
            applicable += 1;
            let g6 = qindex_core::graph::graph6::emit(&g);
            if p.removed.len() >= k * k || !c.exact {
                over_bound.push(format!("{g6}: {} removals", p.removed.len()));
            }
            if c.verdict == PeelVerdict::Fails {
                observations.push(format!("observation (n < 7k^2) {g6}: removed {:?}, survivors {:?}", p.removed, p.survivors));
            }
        }
    }
    details.push(format!(
        "enumerated n <= 9, k = 2: {applicable} graphs meet the hypotheses, {} reach k^2 removals, {} fail the full conclusion (reported only)",
        over_bound.len(),
        observations.len()
    ));
    let enumerated_ok = over_bound.is_empty();
    details.extend(over_bound.into_iter().map(|v| format!("failure {v}")));
    details.extend(observations);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut fails = Vec::new();
    let mut max_removed = [0usize; 5];
    for i in 0..1000 {
        let k = 2 + i % 3;
        let n = rng.gen_range((7 * k * k).max(50)..=200);
        let g = decorated_s_plus(n, k, &mut rng).map_err(|e| e.to_string())?;
        let c = check_peeling_lemma(&g, k, SearchOptions::default()).map_err(|e| e.to_string())?;
        let removed = c.peeling.as_ref().map_or(0, |p| p.removed.len());
        max_removed[k] = max_removed[k].max(removed);
        if c.verdict != PeelVerdict::Holds || !c.in_regime || !c.exact {
            fails.push(format!("instance {i}: n={n} k={k} verdict {:?} exact {}", c.verdict, c.exact));
        }
    }
    details.push(format!(
        "1000 decorated S+ instances, n in [50,200], n >= 7k^2: {} failures; most removals k=2: {}, k=3: {}, k=4: {}",
        fails.len(),
        max_removed[2],
        max_removed[3],
        max_removed[4]
    ));
    let passed = enumerated_ok && fails.is_empty();
    details.extend(fails);
    let mut o = Outcome::new(passed, "fewer than k^2 removals and the dominating vertex survives".into());
    o.details = details;
    Ok(o)
}

fn subgraph_oracles() -> Result<Outcome, String> {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for n in 1..=8 {
        for g in enumerate_graphs(n, false).map_err(|e| e.to_string())? {
            checked += 1;
            let (p, c) = naive_path_cycle(&g);
            let got = (
                longest_path_order(&g).map_err(|e| e.to_string())?.0,
                longest_cycle_order(&g).map_err(|e| e.to_string())?.0,
                matching_number(&g).0,
            );
            let want = (p, c, naive_matching(&g));
            if got != want {
                bad.push(format!("{}: got {got:?}, oracle {want:?}", qindex_core::graph::graph6::emit(&g)));
            }
        }
    }
    let mut o = Outcome::new(bad.is_empty(), format!("{checked} graphs of order <= 8, {} mismatches", bad.len()));
    o.details = bad;
    Ok(o)
}

fn conjecture() -> Result<Outcome, String> {
    let mut details = Vec::new();
    let mut passed = true;
    for variant in [ConjectureVariant::I, ConjectureVariant::II] {
        for n in 5..=9 {
            let r = explore_conjecture(variant, n, 2, &Source::Enumeration, &opts(false)).map_err(|e| e.to_string())?;
            let replays = replay_report(&r, &CheckOptions::default()).map_err(|e| e.to_string())?;
            passed &= r.status == Status::Complete && replays;
            details.push(format!(
                "{} n={n}: {:?}, {} graphs, {} hits, {} violations{}{}",
                r.theorem,
                r.status,
                r.graphs_checked,
                r.hypothesis_hits,
                r.violations.len(),
                if replays { ", all replay" } else { ", REPLAY MISMATCH" },
                r.note.map(|s| format!(" ({s})")).unwrap_or_default()
            ));
        }
    }
    let mut o = Outcome::new(passed, "k = 2, n in 5..=9, both clauses, every violation replayed".into());
    o.details = details;
    Ok(o)
}

type Criterion = (&'static str, fn() -> Result<Outcome, String>);

const CRITERIA: [Criterion; 12] = [
    ("closed-form agreement", closed_form_agreement),
    ("bound-chain reproduction", bound_chain_reproduction),
    ("universal bound soundness", universal_bounds),
    ("Erdos-Gallai exhaustive", erdos_gallai),
    ("main theorem, k = 1", main_theorem_k1),
    ("Balister-Gyori-Lehel-Schelp", bes),
    ("Ali-Staton and its P_{2k+3} continuation", stability),
    ("Yu clause (iii), k = 1", yu),
    ("dominating vertex, k = 1", dominating),
    ("peeling lemma property suite", peeling),
    ("subgraph oracle equivalence", subgraph_oracles),
    ("conjecture exploration", conjecture),
];

fn main() -> ExitCode {
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let o = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let secs = t.elapsed().as_secs_f64();
        println!(
            "[{}] criterion {:>2} {name}: {} [{secs:.1} s]",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.summary
        );
        for d in &o.details {
            println!("         {d}");
        }
        if !o.passed {
            failed += 1;
        }
    }
    println!("{} of 12 criteria passed in {:.1} s", 12 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
