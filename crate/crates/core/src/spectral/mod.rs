//! Q-index computation.
//!
//! `Q(G) = D + A` is symmetric, entrywise nonnegative and positive
//! semidefinite, so power iteration from a positive vector converges to the
//! Perron pair of each connected component. Components are handled
//! separately and the largest value wins; an edgeless graph has `q = 0`.

pub mod bounds;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::connectivity::components;
use crate::graph::Adjacency;

pub use bounds::{
    bound_chain, bound_report, das_bound, edge_degree_bound, edge_lower_bound_from_q, merris_bound,
    q_closed_form_s, BoundReport,
};

/// Default convergence tolerance for [`q_index`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Slack used when a floating-point Q-index is compared against a threshold:
/// `q ≥ t` is read as `q ≥ t − GUARD_BAND`.
pub const GUARD_BAND: f64 = 1e-8;

/// Power-iteration cap before switching to Rayleigh-quotient iteration.
pub const MAX_POWER_STEPS: usize = 100_000;

const MAX_RQI_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub q: f64,
    /// Unit eigenvector for `q`; supported on the winning component.
    pub x: Vec<f64>,
    /// `‖Qx − qx‖∞`.
    pub residual: f64,
    pub iterations: usize,
}

/// `q ≥ threshold` with the guard band applied.
#[inline]
pub fn at_least(q: f64, threshold: f64) -> bool {
    q >= threshold - GUARD_BAND
}

/// Largest eigenvalue of the signless Laplacian.
pub fn q_index<G: Adjacency>(g: &G, tol: f64) -> Result<SpectralResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = g.order();
    if g.edge_count() == 0 {
        let v = 1.0 / (n as f64).sqrt();
        return Ok(SpectralResult { q: 0.0, x: vec![v; n], residual: 0.0, iterations: 0 });
    }
    let mut best: Option<(Vec<usize>, ComponentPair)> = None;
    let mut iterations = 0;
    for comp in components(g) {
        if comp.len() < 2 {
            continue;
        }
        let op = Csr::induced(g, &comp);
        let pair = op.dominant_pair(tol)?;
        iterations += pair.iterations;
        if best.as_ref().is_none_or(|(_, b)| pair.q > b.q) {
            best = Some((comp, pair));
        }
    }
    let (comp, pair) = best.expect("a graph with edges has a component of order >= 2");
    let mut x = vec![0.0; n];
    for (i, &v) in comp.iter().enumerate() {
        x[v] = pair.x[i];
    }
    Ok(SpectralResult { q: pair.q, x, residual: pair.residual, iterations })
}

/// `|q − Σ_{ij∈E}(x_i + x_j)²|` for a computed eigenpair.
pub fn rayleigh_identity_check<G: Adjacency>(g: &G, r: &SpectralResult) -> f64 {
    let mut sum = 0.0;
    for u in 0..g.order() {
        for v in g.neighbors(u) {
            if u < v {
                let s = r.x[u] + r.x[v];
                sum += s * s;
            }
        }
    }
    (r.q - sum).abs()
}

struct ComponentPair {
    q: f64,
    x: Vec<f64>,
    residual: f64,
    iterations: usize,
}

/// Signless Laplacian of one component in compressed-row form.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    fn induced<G: Adjacency>(g: &G, verts: &[usize]) -> Self {
        let mut local = vec![usize::MAX; g.order()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut offsets = Vec::with_capacity(verts.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &v in verts {
            targets.extend(g.neighbors(v).map(|w| local[w]));
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (u, yu) in y.iter_mut().enumerate() {
            let nbrs = &self.targets[self.offsets[u]..self.offsets[u + 1]];
            let s: f64 = nbrs.iter().map(|&w| x[w]).sum();
            *yu = nbrs.len() as f64 * x[u] + s;
        }
    }

    /// Rayleigh quotient and residual of a unit vector; `y` receives `Qx`.
    fn rayleigh(&self, x: &[f64], y: &mut [f64]) -> (f64, f64) {
        self.apply(x, y);
        let q: f64 = x.iter().zip(y.iter()).map(|(a, b)| a * b).sum();
        let r = x.iter().zip(y.iter()).map(|(a, b)| (b - q * a).abs()).fold(0.0, f64::max);
        (q, r)
    }

    fn dominant_pair(&self, tol: f64) -> Result<ComponentPair> {
        let n = self.len();
        let mut x: Vec<f64> = (0..n).map(|u| (self.degree(u) + 1) as f64).collect();
        normalize(&mut x);
        let mut y = vec![0.0; n];
        let mut residual = f64::INFINITY;
        for step in 1..=MAX_POWER_STEPS {
            let (q, r) = self.rayleigh(&x, &mut y);
            residual = r;
            if r <= tol * q.max(1.0) {
                return Ok(ComponentPair { q, x, residual: r, iterations: step });
            }
            x.copy_from_slice(&y);
            normalize(&mut x);
        }
        log::warn!("power iteration stalled at residual {residual:e}; switching to Rayleigh-quotient iteration");
        self.rayleigh_quotient_iteration(x, tol)
    }

    fn rayleigh_quotient_iteration(&self, mut x: Vec<f64>, tol: f64) -> Result<ComponentPair> {
        let n = self.len();
        let mut y = vec![0.0; n];
        let (mut q, mut r) = self.rayleigh(&x, &mut y);
        for step in 1..=MAX_RQI_STEPS {
            if r <= tol * q.max(1.0) {
                return Ok(ComponentPair { q, x, residual: r, iterations: MAX_POWER_STEPS + step });
            }
            let mut m = self.dense();
            let shift = q + 1e-12 * q.max(1.0);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= shift;
            }
            let Some(z) = solve_dense(m, x.clone()) else { break };
            x = z;
            normalize(&mut x);
            if x.iter().sum::<f64>() < 0.0 {
                x.iter_mut().for_each(|v| *v = -*v);
            }
            (q, r) = self.rayleigh(&x, &mut y);
        }
        Err(Error::NotConverged { iterations: MAX_POWER_STEPS + MAX_RQI_STEPS, residual: r })
    }

    fn dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut m = vec![vec![0.0; n]; n];
        for u in 0..n {
            m[u][u] = self.degree(u) as f64;
            for &w in &self.targets[self.offsets[u]..self.offsets[u + 1]] {
                m[u][w] += 1.0;
            }
        }
        m
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// Gaussian elimination with partial pivoting; `None` on an exactly singular pivot.
fn solve_dense(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for c in col..n {
                    m[row][c] -= f * m[col][c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| m[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    Some(x)
}
