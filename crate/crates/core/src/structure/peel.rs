//! Minimum-degree peeling and the decorated `S⁺` instances it is tested on.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dominating_vertex;
use crate::error::{Error, Result};
use crate::graph::family::FamilySpec;
use crate::graph::{Adjacency, SparseGraph};
use crate::subgraph::{has_path_of_order_with, SearchOptions};

/// Which minimum-degree vertex to delete when several qualify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PeelChoice {
    #[default]
    MinIndex,
    /// Uniformly among the candidates, from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peeling {
    /// Surviving vertices, ascending; empty when everything was peeled.
    pub survivors: Vec<usize>,
    /// `(vertex, degree at removal)` in removal order.
    pub removed: Vec<(usize, usize)>,
}

/// Deletes minimum-degree vertices (lowest index first) until `δ ≥ k`.
pub fn peel_to_min_degree<G: Adjacency>(g: &G, k: usize) -> Result<Peeling> {
    peel_with(g, k, PeelChoice::MinIndex)
}

pub fn peel_with<G: Adjacency>(g: &G, k: usize, choice: PeelChoice) -> Result<Peeling> {
    if k == 0 {
        return Err(Error::InvalidArgument("peeling needs k >= 1".into()));
    }
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut alive = vec![true; n];
    let mut left = n;
    let mut removed = Vec::new();
    let mut rng = match choice {
        PeelChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        PeelChoice::MinIndex => None,
    };
    while left > 0 {
        let min = (0..n).filter(|&v| alive[v]).map(|v| deg[v]).min().expect("some vertex alive");
        if min >= k {
            break;
        }
        let v = match rng.as_mut() {
            None => (0..n).find(|&v| alive[v] && deg[v] == min).expect("minimum attained"),
            Some(r) => {
                let cands: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] == min).collect();
                cands[r.gen_range(0..cands.len())]
            }
        };
        alive[v] = false;
        left -= 1;
        removed.push((v, min));
        for w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    Ok(Peeling { survivors: (0..n).filter(|&v| alive[v]).collect(), removed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum PeelVerdict {
    NotApplicable(String),
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelCheck {
    pub verdict: PeelVerdict,
    /// `n ≥ 7k²`, where the conclusion is a theorem rather than an observation.
    pub in_regime: bool,
    pub dominating: Option<usize>,
    pub peeling: Option<Peeling>,
    /// Whether the path-freeness hypothesis was decided exactly.
    pub exact: bool,
}

/// Runs the peeling on a graph meeting the lemma's hypotheses: `k ≥ 2`,
/// `e > k(n−k)`, `δ ≤ k−1`, a vertex of degree `n−1`, and no `P_{2k+3}`.
/// It holds when fewer than `k²` vertices are removed and the dominating
/// vertex survives.
pub fn check_peeling_lemma<G: Adjacency>(g: &G, k: usize, opts: SearchOptions) -> Result<PeelCheck> {
    let n = g.order();
    let na = |reason: &str, dominating| PeelCheck {
        verdict: PeelVerdict::NotApplicable(reason.to_string()),
        in_regime: k >= 2 && n >= 7 * k * k,
        dominating,
        peeling: None,
        exact: true,
    };
    if k < 2 {
        return Ok(na("k < 2", None));
    }
    if n < k || g.edge_count() <= k * (n - k) {
        return Ok(na("e(G) <= k(n-k)", None));
    }
    if g.min_degree() >= k {
        return Ok(na("min degree >= k", None));
    }
    let Some(u) = dominating_vertex(g) else {
        return Ok(na("no dominating vertex", None));
    };
    let (path, exact) = has_path_of_order_with(g, 2 * k + 3, opts)?;
    if path.is_some() {
        return Ok(na("contains P_{2k+3}", Some(u)));
    }
    let peeling = peel_to_min_degree(g, k)?;
    let holds = peeling.removed.len() < k * k && peeling.survivors.binary_search(&u).is_ok();
    Ok(PeelCheck {
        verdict: if holds { PeelVerdict::Holds } else { PeelVerdict::Fails },
        in_regime: n >= 7 * k * k,
        dominating: Some(u),
        peeling: Some(peeling),
        exact,
    })
}

/// A randomly relabelled `S⁺` on `n` vertices in which some independent-side
/// vertices keep only a few clique neighbours (always including one fixed
/// clique vertex), so that `δ ≤ k−1` while `e > k(n−k)` and the graph stays
/// inside `S⁺(n,k)`.
pub fn decorated_s_plus<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<SparseGraph> {
    if k < 2 {
        return Err(Error::InvalidArgument("decorated S+ needs k >= 2".into()));
    }
    // Each thinned vertex of degree d costs k − d against the surplus C(k,2) + 1.
    let budget = k * (k - 1) / 2;
    if n < k + 3 + budget {
        return Err(Error::InvalidArgument(format!("decorated S+ needs n >= {}, got {n}", k + 3 + budget)));
    }
    let extras = rng.gen_range(1..=budget);
    let mut deficit_left = budget;
    let mut degrees = Vec::with_capacity(extras);
    for i in 0..extras {
        let reserve = extras - i - 1;
        let max = (k - 1).min(deficit_left - reserve);
        let deficit = rng.gen_range(1..=max);
        deficit_left -= deficit;
        degrees.push(k - deficit);
    }
    let (base, mut edges) = FamilySpec::SPlus { n: n - extras, k }.edges()?;
    let others: Vec<usize> = (1..k).collect();
    for (i, &d) in degrees.iter().enumerate() {
        let v = base + i;
        edges.push((0, v));
        for &c in others.choose_multiple(rng, d - 1) {
            edges.push((c, v));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    SparseGraph::from_edges(n, &edges)
}
