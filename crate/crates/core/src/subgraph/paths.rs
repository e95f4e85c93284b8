//! Longest paths and cycles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{adjacency_lists, cover_at_most, Certificate};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Bits};

/// Largest (reduced) order handled by the subset dynamic program.
pub const EXACT_LIMIT: usize = 24;

/// Search nodes the branch-and-bound may visit before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

/// Largest vertex cover tried when bounding paths in large graphs.
const COVER_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Accept an undecided branch-and-bound answer instead of failing.
    pub heuristic: bool,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { heuristic: false, node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Vertices on the best path or cycle found (0 when there is none).
    pub order: usize,
    pub certificate: Option<Certificate>,
    /// False only in heuristic mode when the search was cut short.
    pub exact: bool,
}

/// Longest path: its order and a witness. Exact; errors beyond the exact regime.
pub fn longest_path_order<G: Adjacency>(g: &G) -> Result<(usize, Certificate)> {
    let r = longest_path(g, SearchOptions::default())?;
    Ok((r.order, r.certificate.expect("non-empty graph has a path")))
}

pub fn longest_path<G: Adjacency>(g: &G, opts: SearchOptions) -> Result<SearchResult> {
    path_search(g, None, usize::MAX, opts)
}

/// A path on exactly `l` vertices, if one exists.
pub fn has_path_of_order<G: Adjacency>(g: &G, l: usize) -> Result<Option<Certificate>> {
    has_path_of_order_with(g, l, SearchOptions::default()).map(|(c, _)| c)
}

/// As [`has_path_of_order`], also reporting whether the answer is exact.
pub fn has_path_of_order_with<G: Adjacency>(g: &G, l: usize, opts: SearchOptions) -> Result<(Option<Certificate>, bool)> {
    if l == 0 {
        return Err(Error::InvalidArgument("path order must be at least 1".into()));
    }
    if l > g.order() {
        check_nonempty(g)?;
        return Ok((None, true));
    }
    let r = path_search(g, None, l, opts)?;
    Ok((truncate(r.certificate, l), r.exact))
}

/// Maximum order of a path with `u` as an end vertex.
pub fn longest_path_from<G: Adjacency>(g: &G, u: usize) -> Result<usize> {
    longest_path_from_with(g, u, SearchOptions::default()).map(|r| r.order)
}

pub fn longest_path_from_with<G: Adjacency>(g: &G, u: usize, opts: SearchOptions) -> Result<SearchResult> {
    if u >= g.order() {
        return Err(Error::VertexOutOfRange { v: u, n: g.order() });
    }
    path_search(g, Some(u), usize::MAX, opts)
}

/// Circumference and a witness cycle; `(0, None)` for forests.
pub fn longest_cycle_order<G: Adjacency>(g: &G) -> Result<(usize, Option<Certificate>)> {
    let r = longest_cycle(g, SearchOptions::default())?;
    Ok((r.order, r.certificate))
}

pub fn longest_cycle<G: Adjacency>(g: &G, opts: SearchOptions) -> Result<SearchResult> {
    check_nonempty(g)?;
    let work = Work::new(g, None);
    if let Some(rows) = work.small_rows() {
        let dp = cycle_table(&rows);
        let best = (1..dp.len() as u32).filter(|&m| closable(&rows, &dp, m)).fold(0u32, |b, m| {
            if m.count_ones() > b.count_ones() {
                m
            } else {
                b
            }
        });
        if best == 0 {
            return Ok(SearchResult { order: 0, certificate: None, exact: true });
        }
        let cert = Certificate::Cycle(work.lift(close_cycle(&rows, &dp, best)));
        return Ok(SearchResult { order: best.count_ones() as usize, certificate: Some(cert), exact: true });
    }
    let upper = work.cycle_upper_bound();
    let mut dfs = Dfs::new(&work.adj, upper, None, opts.node_budget);
    dfs.run_cycles();
    finish(g, &work, dfs, opts, true)
}

/// All cycle lengths present in `g`, ascending. Exact regime only.
pub fn cycle_lengths<G: Adjacency>(g: &G) -> Result<Vec<usize>> {
    check_nonempty(g)?;
    let work = Work::new(g, None);
    let rows = work.small_rows().ok_or(Error::BeyondExactRegime { n: g.order(), max: EXACT_LIMIT })?;
    let dp = cycle_table(&rows);
    let mut present = vec![false; rows.len() + 1];
    for m in 1..dp.len() as u32 {
        if closable(&rows, &dp, m) {
            present[m.count_ones() as usize] = true;
        }
    }
    Ok((0..present.len()).filter(|&l| present[l]).collect())
}

/// A cycle of exactly `l` vertices, if one exists.
pub fn has_cycle_of_length<G: Adjacency>(g: &G, l: usize) -> Result<Option<Certificate>> {
    has_cycle_of_length_with(g, l, SearchOptions::default()).map(|(c, _)| c)
}

pub fn has_cycle_of_length_with<G: Adjacency>(g: &G, l: usize, opts: SearchOptions) -> Result<(Option<Certificate>, bool)> {
    check_nonempty(g)?;
    if l < 3 || l > g.order() {
        return Ok((None, true));
    }
    let work = Work::new(g, None);
    if let Some(rows) = work.small_rows() {
        let dp = cycle_table(&rows);
        let hit = (1..dp.len() as u32).find(|&m| m.count_ones() as usize == l && closable(&rows, &dp, m));
        return Ok((hit.map(|m| Certificate::Cycle(work.lift(close_cycle(&rows, &dp, m)))), true));
    }
    if work.cycle_upper_bound() < l {
        return Ok((None, true));
    }
    let mut dfs = Dfs::new(&work.adj, l, Some(l), opts.node_budget);
    dfs.run_cycles();
    let r = finish(g, &work, dfs, opts, true)?;
    Ok((r.certificate, r.exact))
}

fn check_nonempty<G: Adjacency>(g: &G) -> Result<()> {
    if g.order() == 0 {
        Err(Error::InvalidArgument("graph has no vertices".into()))
    } else {
        Ok(())
    }
}

fn truncate(c: Option<Certificate>, l: usize) -> Option<Certificate> {
    match c {
        Some(Certificate::Path(mut p)) if p.len() >= l => {
            p.truncate(l);
            Some(Certificate::Path(p))
        }
        _ => None,
    }
}

/// Longest path (rooted at `root` if given); stops early once `target` vertices are reached.
fn path_search<G: Adjacency>(g: &G, root: Option<usize>, target: usize, opts: SearchOptions) -> Result<SearchResult> {
    check_nonempty(g)?;
    let work = Work::new(g, root);
    if let Some(rows) = work.small_rows() {
        let (dp, keep): (Vec<u32>, Box<dyn Fn(u32) -> bool>) = match root {
            Some(u) => {
                let r = work.index_of(u);
                (rooted_table(&rows, r), Box::new(move |m| m >> r & 1 == 1))
            }
            None => (path_table(&rows), Box::new(|_| true)),
        };
        let mut best = 0u32;
        for m in 1..dp.len() as u32 {
            if dp[m as usize] != 0 && m.count_ones() > best.count_ones() && keep(m) {
                best = m;
            }
        }
        let end = dp[best as usize].trailing_zeros() as usize;
        let mut seq = backtrack(&rows, &dp, best, end);
        seq.reverse();
        let cert = Certificate::Path(work.lift(seq));
        return Ok(SearchResult { order: best.count_ones() as usize, certificate: Some(cert), exact: true });
    }
    let upper = work.path_upper_bound();
    if target <= g.order() && upper < target {
        return Ok(SearchResult { order: upper, certificate: None, exact: true });
    }
    let mut dfs = Dfs::new(&work.adj, upper.min(target), None, opts.node_budget);
    match root {
        Some(u) => dfs.run_paths(&[work.index_of(u)]),
        None => dfs.run_paths(&(0..work.adj.len()).collect::<Vec<_>>()),
    }
    finish(g, &work, dfs, opts, false)
}

fn finish<G: Adjacency>(g: &G, work: &Work, dfs: Dfs<'_>, opts: SearchOptions, cycle: bool) -> Result<SearchResult> {
    let decided = !dfs.aborted || dfs.best.len() >= dfs.target;
    if !decided && !opts.heuristic {
        return Err(Error::BeyondExactRegime { n: g.order(), max: EXACT_LIMIT });
    }
    if !decided {
        log::warn!("search budget exhausted after {} nodes; result is a lower bound", dfs.nodes);
    }
    let order = dfs.best.len();
    let certificate = (order > 0).then(|| {
        let seq = work.lift(dfs.best.clone());
        if cycle {
            Certificate::Cycle(seq)
        } else {
            Certificate::Path(seq)
        }
    });
    Ok(SearchResult { order, certificate, exact: decided })
}

/// The graph the searches run on: `g` itself when small, otherwise `g` with
/// surplus false twins removed. A class of pairwise twins with common
/// neighbourhood `N` meets any path in at most `|N| + 1` vertices, so keeping
/// that many changes no path or cycle length.
struct Work {
    map: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl Work {
    fn new<G: Adjacency>(g: &G, pinned: Option<usize>) -> Work {
        let n = g.order();
        let full = adjacency_lists(g);
        if n <= EXACT_LIMIT {
            return Work { map: (0..n).collect(), adj: full };
        }
        let mut classes: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for (v, nb) in full.iter().enumerate() {
            classes.entry(nb.as_slice()).or_default().push(v);
        }
        let mut keep = vec![false; n];
        for (nb, members) in &classes {
            let cap = nb.len() + 1;
            for &v in members.iter().take(cap) {
                keep[v] = true;
            }
            if let Some(p) = pinned.filter(|p| members.len() > cap && members[cap..].contains(p)) {
                keep[members[cap - 1]] = false;
                keep[p] = true;
            }
        }
        let map: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map.iter().map(|&v| full[v].iter().filter(|&&w| keep[w]).map(|&w| index[w]).collect()).collect();
        if map.len() < n {
            log::debug!("twin reduction: {n} -> {} vertices", map.len());
        }
        Work { map, adj }
    }

    fn small_rows(&self) -> Option<Vec<u64>> {
        (self.adj.len() <= EXACT_LIMIT).then(|| self.adj.iter().map(|nb| nb.iter().fold(0u64, |r, &w| r | 1 << w)).collect())
    }

    fn index_of(&self, v: usize) -> usize {
        self.map.binary_search(&v).expect("pinned vertex survives reduction")
    }

    fn lift(&self, seq: Vec<usize>) -> Vec<usize> {
        seq.into_iter().map(|i| self.map[i]).collect()
    }

    /// Smallest vertex cover `τ ≤ COVER_LIMIT`, and whether some edge can be left
    /// outside a cover of size `τ − 1`.
    fn cover_profile(&self) -> Option<(usize, bool)> {
        let tau = (0..=COVER_LIMIT).find(|&j| cover_at_most(&self.adj, None, j).is_some())?;
        let plus = tau > 0
            && self.adj.iter().enumerate().any(|(u, nb)| {
                nb.iter().any(|&v| u < v && cover_at_most(&self.adj, Some((u, v)), tau - 1).is_some())
            });
        Some((tau, plus))
    }

    /// A path alternates with a vertex cover `K`: at most `|K| + 1` outside
    /// vertices, plus one when the outside spans a single edge.
    fn path_upper_bound(&self) -> usize {
        let m = self.adj.len();
        match self.cover_profile() {
            Some((tau, true)) => m.min(2 * tau),
            Some((tau, false)) => m.min(2 * tau + 1),
            None => m,
        }
    }

    fn cycle_upper_bound(&self) -> usize {
        let m = self.adj.len();
        match self.cover_profile() {
            Some((tau, true)) => m.min(2 * tau - 1),
            Some((tau, false)) => m.min(2 * tau),
            None => m,
        }
    }
}

/// `dp[S]`: endpoints of paths whose vertex set is exactly `S`.
fn path_table(rows: &[u64]) -> Vec<u32> {
    let size = 1usize << rows.len();
    let mut dp = vec![0u32; size];
    for m in 1..size {
        let m32 = m as u32;
        if m32.is_power_of_two() {
            dp[m] = m32;
            continue;
        }
        let mut ends = 0u32;
        for v in Bits(m as u64) {
            if rows[v] as u32 & dp[m ^ (1 << v)] != 0 {
                ends |= 1 << v;
            }
        }
        dp[m] = ends;
    }
    dp
}

/// `dp[S]`: endpoints of paths from `r` with vertex set `S` (zero when `r ∉ S`).
fn rooted_table(rows: &[u64], r: usize) -> Vec<u32> {
    let size = 1usize << rows.len();
    let mut dp = vec![0u32; size];
    dp[1 << r] = 1 << r;
    for m in 1..size {
        if m >> r & 1 == 0 || m == 1 << r {
            continue;
        }
        let mut ends = 0u32;
        for v in Bits((m ^ (1 << r)) as u64) {
            if rows[v] as u32 & dp[m ^ (1 << v)] != 0 {
                ends |= 1 << v;
            }
        }
        dp[m] = ends;
    }
    dp
}

/// Rooted table where each subset is rooted at its smallest vertex.
fn cycle_table(rows: &[u64]) -> Vec<u32> {
    let size = 1usize << rows.len();
    let mut dp = vec![0u32; size];
    for m in 1..size {
        let m32 = m as u32;
        if m32.is_power_of_two() {
            dp[m] = m32;
            continue;
        }
        let low = m32 & m32.wrapping_neg();
        let mut ends = 0u32;
        for v in Bits((m32 ^ low) as u64) {
            if rows[v] as u32 & dp[m ^ (1 << v)] != 0 {
                ends |= 1 << v;
            }
        }
        dp[m] = ends;
    }
    dp
}

fn closable(rows: &[u64], dp: &[u32], m: u32) -> bool {
    m.count_ones() >= 3 && dp[m as usize] & rows[m.trailing_zeros() as usize] as u32 != 0
}

fn close_cycle(rows: &[u64], dp: &[u32], m: u32) -> Vec<usize> {
    let root = m.trailing_zeros() as usize;
    let end = (dp[m as usize] & rows[root] as u32).trailing_zeros() as usize;
    let mut seq = backtrack(rows, dp, m, end);
    seq.reverse();
    seq
}

/// Walks back from `end` through the table, taking the lowest predecessor each step.
fn backtrack(rows: &[u64], dp: &[u32], mut mask: u32, end: usize) -> Vec<usize> {
    let mut seq = vec![end];
    let mut v = end;
    while mask.count_ones() > 1 {
        mask ^= 1 << v;
        let u = (rows[v] as u32 & dp[mask as usize]).trailing_zeros() as usize;
        seq.push(u);
        v = u;
    }
    seq
}

/// Depth-first branch-and-bound over simple paths.
struct Dfs<'a> {
    adj: &'a [Vec<usize>],
    on_path: Vec<bool>,
    path: Vec<usize>,
    best: Vec<usize>,
    /// Stop as soon as `best` reaches this many vertices.
    target: usize,
    /// Cycles of exactly this length only.
    exact_len: Option<usize>,
    /// Cycle mode: the root, and only vertices `≥ root` are used.
    root: Option<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    seen: Vec<u32>,
    stamp: u32,
    stack: Vec<usize>,
}

impl<'a> Dfs<'a> {
    fn new(adj: &'a [Vec<usize>], target: usize, exact_len: Option<usize>, budget: u64) -> Self {
        let m = adj.len();
        Dfs {
            adj,
            on_path: vec![false; m],
            path: Vec::with_capacity(m),
            best: Vec::new(),
            target,
            exact_len,
            root: None,
            nodes: 0,
            budget,
            aborted: false,
            seen: vec![0; m],
            stamp: 0,
            stack: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.aborted || self.best.len() >= self.target
    }

    fn run_paths(&mut self, starts: &[usize]) {
        for &s in starts {
            self.visit_from(s);
            if self.done() {
                return;
            }
        }
    }

    fn run_cycles(&mut self) {
        for r in 0..self.adj.len() {
            self.root = Some(r);
            self.visit_from(r);
            if self.done() {
                return;
            }
        }
    }

    fn visit_from(&mut self, s: usize) {
        self.on_path[s] = true;
        self.path.push(s);
        self.extend();
        self.path.pop();
        self.on_path[s] = false;
    }

    fn allowed(&self, w: usize) -> bool {
        !self.on_path[w] && self.root.is_none_or(|r| w > r)
    }

    /// Unused allowed vertices reachable from `v`.
    fn reach(&mut self, v: usize) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        self.stack.clear();
        self.stack.push(v);
        self.seen[v] = stamp;
        let mut count = 0;
        while let Some(x) = self.stack.pop() {
            for &w in &self.adj[x] {
                if self.seen[w] != stamp && self.allowed(w) {
                    self.seen[w] = stamp;
                    count += 1;
                    self.stack.push(w);
                }
            }
        }
        count
    }

    fn extend(&mut self) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let len = self.path.len();
        let v = self.path[len - 1];
        match self.root {
            None => {
                if len > self.best.len() {
                    self.best = self.path.clone();
                }
            }
            Some(r) => {
                let wanted = self.exact_len.is_none_or(|l| l == len);
                if len >= 3 && len > self.best.len() && wanted && self.adj[v].binary_search(&r).is_ok() {
                    self.best = self.path.clone();
                }
            }
        }
        if self.done() || self.exact_len.is_some_and(|l| len >= l) {
            return;
        }
        let reach = self.reach(v);
        let need = self.exact_len.unwrap_or(self.best.len() + 1);
        if len + reach < need {
            return;
        }
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.allowed(w) {
                self.on_path[w] = true;
                self.path.push(w);
                self.extend();
                self.path.pop();
                self.on_path[w] = false;
                if self.done() {
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family::{make_family, FamilySpec};
    use crate::graph::{Graph, SparseGraph};

    fn lp(g: &Graph) -> usize {
        let (l, c) = longest_path_order(g).unwrap();
        c.validate(g).unwrap();
        assert_eq!(c.size(), l);
        l
    }

    fn fam(spec: FamilySpec) -> Graph {
        make_family(spec).unwrap()
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(lp(&fam(FamilySpec::S { n: 6, k: 2 })), 5);
        assert_eq!(lp(&fam(FamilySpec::S { n: 7, k: 2 })), 5);
        assert_eq!(lp(&fam(FamilySpec::S { n: 12, k: 3 })), 7);
        assert_eq!(lp(&fam(FamilySpec::SPlus { n: 7, k: 2 })), 6);
        assert_eq!(lp(&Graph::empty(5).unwrap()), 1);
        assert_eq!(lp(&Graph::complete(7).unwrap()), 7);
        assert_eq!(lp(&Graph::path(9).unwrap()), 9);
    }

    #[test]
    fn path_of_order_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let p = has_path_of_order(&c5, 5).unwrap().unwrap();
        p.validate(&c5).unwrap();
        assert!(has_path_of_order(&Graph::star(7).unwrap(), 4).unwrap().is_none());
        let l32 = fam(FamilySpec::L { t: 3, k: 2 });
        let p5 = has_path_of_order(&l32, 5).unwrap().unwrap();
        assert_eq!(p5.size(), 5);
        p5.validate(&l32).unwrap();
        assert!(has_path_of_order(&l32, 6).unwrap().is_none());
        assert!(has_path_of_order(&l32, 7).unwrap().is_none());
        assert!(has_path_of_order(&l32, 0).is_err());
    }

    #[test]
    fn cycle_examples() {
        let tree = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(longest_cycle_order(&tree).unwrap(), (0, None));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(longest_cycle_order(&c5).unwrap().0, 5);
        let s92 = fam(FamilySpec::S { n: 9, k: 2 });
        let (c, w) = longest_cycle_order(&s92).unwrap();
        assert_eq!(c, 4);
        w.unwrap().validate(&s92).unwrap();
        assert_eq!(cycle_lengths(&s92).unwrap(), vec![3, 4]);
        assert_eq!(cycle_lengths(&Graph::complete(5).unwrap()).unwrap(), vec![3, 4, 5]);
        assert!(has_cycle_of_length(&s92, 5).unwrap().is_none());
        let c = has_cycle_of_length(&Graph::complete(6).unwrap(), 5).unwrap().unwrap();
        assert_eq!(c.size(), 5);
    }

    #[test]
    fn rooted_examples() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(longest_path_from(&p4, 0).unwrap(), 4);
        assert_eq!(longest_path_from(&p4, 1).unwrap(), 3);
        let bowtie = fam(FamilySpec::L { t: 2, k: 2 });
        assert_eq!(longest_path_from(&bowtie, 0).unwrap(), 3);
        assert_eq!(longest_path_from(&Graph::complete(5).unwrap(), 3).unwrap(), 5);
        assert!(longest_path_from(&p4, 4).is_err());
    }

    #[test]
    fn large_graphs_reduce_exactly() {
        let s = FamilySpec::S { n: 200, k: 3 }.build_sparse().unwrap();
        let r = longest_path(&s, SearchOptions::default()).unwrap();
        assert!(r.exact);
        assert_eq!(r.order, 7);
        r.certificate.unwrap().validate(&s).unwrap();
        let sp = FamilySpec::SPlus { n: 150, k: 4 }.build_sparse().unwrap();
        assert_eq!(longest_path(&sp, SearchOptions::default()).unwrap().order, 10);
        assert!(has_path_of_order(&sp, 11).unwrap().is_none());
        assert_eq!(longest_cycle(&sp, SearchOptions::default()).unwrap().order, 9);
        let c = longest_path_from_with(&sp, 140, SearchOptions::default()).unwrap();
        assert_eq!(c.order, 10);
        match c.certificate.unwrap() {
            Certificate::Path(p) => assert_eq!(p[0], 140),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion() {
        // A long cycle with chords: no reduction, no small cover.
        let n = 40;
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).step_by(3).map(|i| (i, (i + 7) % n)));
        let g = SparseGraph::from_edges(n, &edges).unwrap();
        let tight = SearchOptions { heuristic: false, node_budget: 10 };
        assert!(matches!(longest_cycle(&g, tight), Err(Error::BeyondExactRegime { .. })));
        let loose = SearchOptions { heuristic: true, node_budget: 10 };
        let r = longest_path(&g, loose).unwrap();
        assert!(!r.exact);
        r.certificate.unwrap().validate(&g).unwrap();
        // Hamiltonian cycle reaches the trivial bound, which decides the search.
        assert_eq!(longest_path(&g, SearchOptions::default()).unwrap().order, n);
    }
}
