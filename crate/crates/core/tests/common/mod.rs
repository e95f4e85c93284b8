//! Slow, obviously-correct oracles shared by the integration tests.

#![allow(dead_code)]

use nalgebra::DMatrix;

use qindex_core::{Adjacency, Graph};

pub fn dense_q<G: Adjacency>(g: &G) -> f64 {
    let n = g.order();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        m[(u, u)] = g.degree(u) as f64;
        for v in g.neighbors(u) {
            m[(u, v)] = 1.0;
        }
    }
    m.symmetric_eigen().eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Longest path and longest cycle by extending simple paths one vertex at a time.
pub fn naive_path_cycle(g: &Graph) -> (usize, usize) {
    fn go(g: &Graph, path: &mut Vec<usize>, used: u64, best: &mut (usize, usize)) {
        best.0 = best.0.max(path.len());
        let first = path[0];
        let last = *path.last().unwrap();
        if path.len() >= 3 && g.has_edge(last, first) {
            best.1 = best.1.max(path.len());
        }
        for w in g.neighbors(last) {
            if used >> w & 1 == 0 {
                path.push(w);
                go(g, path, used | 1 << w, best);
                path.pop();
            }
        }
    }
    let mut best = (0, 0);
    for s in 0..g.n() {
        go(g, &mut vec![s], 1 << s, &mut best);
    }
    best
}

/// Maximum matching by trying every edge subset in order of the lowest uncovered vertex.
pub fn naive_matching(g: &Graph) -> usize {
    fn go(g: &Graph, free: u64) -> usize {
        let Some(u) = (0..g.n()).find(|&u| free >> u & 1 == 1) else {
            return 0;
        };
        let rest = free & !(1 << u);
        let mut best = go(g, rest);
        for v in g.neighbors(u) {
            if rest >> v & 1 == 1 {
                best = best.max(1 + go(g, rest & !(1 << v)));
            }
        }
        best
    }
    go(g, g.vertex_mask())
}
