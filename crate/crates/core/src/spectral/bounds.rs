//! Closed forms and upper bounds for the Q-index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Adjacency;

/// `q(S(n,k)) = (n+2k−2 + √((n+2k−2)² − 8(k²−k))) / 2`.
pub fn q_closed_form_s(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    let b = n + 2.0 * k - 2.0;
    (b + (b * b - 8.0 * (k * k - k)).sqrt()) / 2.0
}

/// `max_u { d(u) + (1/d(u)) Σ_{v∈Γ(u)} d(v) }` over non-isolated vertices; 0 when edgeless.
pub fn merris_bound<G: Adjacency>(g: &G) -> f64 {
    let mut best = 0.0f64;
    for u in 0..g.order() {
        let d = g.degree(u);
        if d == 0 {
            continue;
        }
        let s: usize = g.neighbors(u).map(|v| g.degree(v)).sum();
        best = best.max(d as f64 + s as f64 / d as f64);
    }
    best
}

/// `2e/(n−1) + n − 2`.
pub fn das_bound<G: Adjacency>(g: &G) -> Result<f64> {
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidArgument("the Das bound needs at least two vertices".into()));
    }
    Ok(2.0 * g.edge_count() as f64 / (n as f64 - 1.0) + n as f64 - 2.0)
}

/// `max_{uv∈E} d(u) + d(v)`.
pub fn edge_degree_bound<G: Adjacency>(g: &G) -> Result<f64> {
    let mut best = None;
    for u in 0..g.order() {
        for v in g.neighbors(u) {
            if u < v {
                let s = g.degree(u) + g.degree(v);
                best = Some(best.map_or(s, |b: usize| b.max(s)));
            }
        }
    }
    best.map(|b| b as f64).ok_or(Error::Edgeless)
}

/// Whether `(n, k)` lies in the regime `k ≥ 2, n ≥ 7k²` of the lower-bound chain.
pub fn chain_regime(n: usize, k: usize) -> bool {
    k >= 2 && n >= 7 * k * k
}

fn chain_values(n: usize, k: usize) -> (f64, f64) {
    let (nf, kf) = (n as f64, k as f64);
    let lower = nf + 2.0 * kf - 2.0 - 2.0 * (kf * kf - kf) / (nf + 2.0 * kf - 3.0);
    (lower, nf + 2.0 * kf - 3.0)
}

/// `(n+2k−2 − 2(k²−k)/(n+2k−3), n+2k−3)`, the two lower bounds on `q(S(n,k))`.
pub fn bound_chain(n: usize, k: usize) -> Result<(f64, f64)> {
    if !chain_regime(n, k) {
        return Err(Error::InvalidArgument(format!("bound chain needs k >= 2 and n >= 7k^2, got n={n}, k={k}")));
    }
    Ok(chain_values(n, k))
}

/// `e(G) > k(n−k)`: the edge count forced by `q(G) ≥ q(S(n,k))` through the Das bound.
pub fn edge_lower_bound_from_q<G: Adjacency>(g: &G, k: usize) -> bool {
    let n = g.order();
    n >= k && g.edge_count() > k * (n - k)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub merris: f64,
    pub das: f64,
    /// `q(S(n,k))` when `n ≥ k+1`.
    pub closed_form: Option<f64>,
    pub chain_lower: f64,
    pub chain_floor: f64,
    /// Whether `(n, k)` is in the regime where the chain is asserted.
    pub chain_in_regime: bool,
}

pub fn bound_report<G: Adjacency>(g: &G, k: usize) -> Result<BoundReport> {
    let n = g.order();
    let (chain_lower, chain_floor) = chain_values(n, k);
    Ok(BoundReport {
        merris: merris_bound(g),
        das: das_bound(g)?,
        closed_form: (k >= 1 && n > k).then(|| q_closed_form_s(n, k)),
        chain_lower,
        chain_floor,
        chain_in_regime: chain_regime(n, k),
    })
}
