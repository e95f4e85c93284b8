//! Worked examples with known answers, run by the command-line `selftest`.

use serde::Serialize;

use crate::graph::canon::is_isomorphic;
use crate::graph::family::{make_family, FamilySpec};
use crate::graph::{graph6, Adjacency, Graph};
use crate::spectral::{das_bound, merris_bound, q_closed_form_s, q_index, DEFAULT_TOL};
use crate::structure::{classify_exceptional, dominating_vertex, is_sub_S, is_sub_S_plus, peel_to_min_degree, Family};
use crate::subgraph::{has_path_of_order, longest_cycle_order, longest_path_from, longest_path_order, matching_number};
use crate::verify::enumerate::class_counts;
use crate::verify::{check, CheckOptions, Source, TheoremId};

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

type Check = fn() -> Result<(), String>;

fn fam(spec: FamilySpec) -> Result<Graph, String> {
    make_family(spec).map_err(|e| e.to_string())
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn close(got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("got {got}, expected {want} ± {tol}"))
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

const FIXTURES: &[(&str, Check)] = &[
    ("S(9,2) has 15 edges and graph6 round-trips", || {
        let g = fam(FamilySpec::S { n: 9, k: 2 })?;
        expect(g.edge_count(), 15)?;
        expect(graph6::parse(&graph6::emit(&g)).map_err(e)?, g)
    }),
    ("L(3,2) has order 7, Book(3,2) order 8, DoubleL(2,2,2) order 10", || {
        expect(fam(FamilySpec::L { t: 3, k: 2 })?.n(), 7)?;
        expect(fam(FamilySpec::Book { t: 3, k: 2 })?.n(), 8)?;
        expect(fam(FamilySpec::DoubleL { s: 2, t: 2, k: 2 })?.n(), 10)
    }),
    ("q(K2) = 2, q(K_{1,3}) = 4, q(C5) = 4", || {
        close(q_index(&Graph::complete(2).map_err(e)?, DEFAULT_TOL).map_err(e)?.q, 2.0, 1e-9)?;
        close(q_index(&Graph::star(3).map_err(e)?, DEFAULT_TOL).map_err(e)?.q, 4.0, 1e-9)?;
        close(q_index(&Graph::cycle(5).map_err(e)?, DEFAULT_TOL).map_err(e)?.q, 4.0, 1e-9)
    }),
    ("q(S(n,k)) matches its closed form", || {
        for (n, k) in [(9, 2), (28, 2), (63, 3)] {
            let g = FamilySpec::S { n, k }.build_sparse().map_err(e)?;
            close(q_index(&g, DEFAULT_TOL).map_err(e)?.q, q_closed_form_s(n, k), 1e-8)?;
        }
        Ok(())
    }),
    ("Merris(K_{1,4}) = 5, Das(S(9,2)) = 10.75", || {
        expect(merris_bound(&Graph::star(4).map_err(e)?), 5.0)?;
        expect(das_bound(&fam(FamilySpec::S { n: 9, k: 2 })?).map_err(e)?, 10.75)
    }),
    ("longest paths: S(7,2) → 5, S⁺(7,2) → 6, empty(5) → 1", || {
        expect(longest_path_order(&fam(FamilySpec::S { n: 7, k: 2 })?).map_err(e)?.0, 5)?;
        expect(longest_path_order(&fam(FamilySpec::SPlus { n: 7, k: 2 })?).map_err(e)?.0, 6)?;
        expect(longest_path_order(&Graph::empty(5).map_err(e)?).map_err(e)?.0, 1)
    }),
    ("paths of given order: C5 ⊃ P5, K_{1,7} ⊅ P4, L(3,2) ⊅ P6", || {
        expect(has_path_of_order(&Graph::cycle(5).map_err(e)?, 5).map_err(e)?.is_some(), true)?;
        expect(has_path_of_order(&Graph::star(7).map_err(e)?, 4).map_err(e)?.is_some(), false)?;
        let l = fam(FamilySpec::L { t: 3, k: 2 })?;
        expect(has_path_of_order(&l, 5).map_err(e)?.is_some(), true)?;
        expect(has_path_of_order(&l, 6).map_err(e)?.is_some(), false)
    }),
    ("circumference: C5 → 5, S(9,2) → 4, tree → 0", || {
        expect(longest_cycle_order(&Graph::cycle(5).map_err(e)?).map_err(e)?.0, 5)?;
        expect(longest_cycle_order(&fam(FamilySpec::S { n: 9, k: 2 })?).map_err(e)?.0, 4)?;
        expect(longest_cycle_order(&Graph::path(6).map_err(e)?).map_err(e)?.0, 0)
    }),
    ("matching number: K_{1,6} → 1, S(9,2) → 2, C6 → 3", || {
        expect(matching_number(&Graph::star(6).map_err(e)?).0, 1)?;
        expect(matching_number(&fam(FamilySpec::S { n: 9, k: 2 })?).0, 2)?;
        expect(matching_number(&Graph::cycle(6).map_err(e)?).0, 3)
    }),
    ("rooted paths: P4 end → 4, P4 inner → 3, bowtie centre → 3", || {
        let p4 = Graph::path(4).map_err(e)?;
        expect(longest_path_from(&p4, 0).map_err(e)?, 4)?;
        expect(longest_path_from(&p4, 1).map_err(e)?, 3)?;
        expect(longest_path_from(&fam(FamilySpec::L { t: 2, k: 2 })?, 0).map_err(e)?, 3)
    }),
    ("dominating vertices and covers", || {
        expect(dominating_vertex(&fam(FamilySpec::S { n: 9, k: 2 })?), Some(0))?;
        expect(dominating_vertex(&Graph::cycle(5).map_err(e)?), None)?;
        expect(is_sub_S(&Graph::cycle(5).map_err(e)?, 2), None)?;
        expect(is_sub_S(&Graph::star(8).map_err(e)?, 1), Some(vec![0]))?;
        expect(is_sub_S_plus(&fam(FamilySpec::SPlus { n: 9, k: 2 })?, 2).is_some(), true)
    }),
    ("exceptional families classify to their clause", || {
        let m = classify_exceptional(&fam(FamilySpec::L { t: 3, k: 2 })?, 2).map_err(e)?;
        expect(m.matched, Family::LExact)?;
        let m = classify_exceptional(&fam(FamilySpec::DoubleL { s: 2, t: 2, k: 2 })?, 2).map_err(e)?;
        expect(m.matched, Family::DoubleLExact)?;
        let m = classify_exceptional(&fam(FamilySpec::SPlus { n: 9, k: 2 })?, 2).map_err(e)?;
        expect(m.clause.as_str(), "i")
    }),
    ("peeling: S(9,2) untouched, K_{1,8} exhausted", || {
        expect(peel_to_min_degree(&fam(FamilySpec::S { n: 9, k: 2 })?, 2).map_err(e)?.removed.len(), 0)?;
        expect(peel_to_min_degree(&Graph::star(8).map_err(e)?, 2).map_err(e)?.survivors.len(), 0)
    }),
    ("isomorph-free enumeration counts through order 7", || {
        let want = [(1, 1), (2, 1), (4, 2), (11, 6), (34, 21), (156, 112), (1044, 853)];
        for (i, &w) in want.iter().enumerate() {
            expect(class_counts(i + 1).map_err(e)?, w)?;
        }
        Ok(())
    }),
    ("canonical forms: C6 ≇ 2K3, relabelled Petersen ≅ Petersen", || {
        let c6 = Graph::cycle(6).map_err(e)?;
        let k3 = Graph::complete(3).map_err(e)?;
        expect(is_isomorphic(&c6, &k3.disjoint_union(&k3).map_err(e)?), false)?;
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let mut edges = outer.clone();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (i + 5, (i + 2) % 5 + 5)));
        let p = Graph::from_edges(10, &edges).map_err(e)?;
        expect(is_isomorphic(&p, &p.relabel(&[3, 7, 1, 9, 0, 5, 2, 8, 4, 6])), true)
    }),
    ("EG at n=8, k=2: 12346 graphs, no violations", || {
        let r = check(TheoremId::Eg, 8, 2, &Source::Enumeration, &CheckOptions::default()).map_err(e)?;
        expect((r.graphs_checked, r.violations.len()), (12346, 0))
    }),
    ("MT_i at n=8, k=1: no violations", || {
        let r = check(TheoremId::MtI, 8, 1, &Source::Enumeration, &CheckOptions::default()).map_err(e)?;
        expect(r.violations.len(), 0)
    }),
    ("AS at n=7, k=2: no violations", || {
        let r = check(TheoremId::As, 7, 2, &Source::Enumeration, &CheckOptions::default()).map_err(e)?;
        expect(r.violations.len(), 0)
    }),
];

/// Runs every fixture.
pub fn run_all() -> Vec<FixtureResult> {
    FIXTURES
        .iter()
        .map(|&(name, f)| {
            let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
            FixtureResult { name, passed: r.is_ok(), detail: r.err() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_fixtures_pass() {
        for r in super::run_all() {
            assert!(r.passed, "{}: {:?}", r.name, r.detail);
        }
    }
}
