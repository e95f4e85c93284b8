//! Membership in the extremal and exceptional families.

mod peel;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::canon::is_isomorphic;
use crate::graph::connectivity::{blocks_and_cut_vertices, components, is_connected};
use crate::graph::family::{make_family, FamilySpec};
use crate::graph::{Adjacency, Graph};
use crate::subgraph::{adjacency_lists, cover_at_most, s_plus_cover_at_most};

pub use peel::{
    check_peeling_lemma, decorated_s_plus, peel_to_min_degree, peel_with, PeelCheck, PeelChoice, PeelVerdict,
    Peeling,
};

/// Lowest-index vertex of degree `n − 1`.
pub fn dominating_vertex<G: Adjacency>(g: &G) -> Option<usize> {
    let n = g.order();
    (0..n).find(|&u| g.degree(u) + 1 == n)
}

#[allow(non_snake_case)]
/// A vertex cover of size at most `k`: then `G` is a subgraph of `S(n,k)`.
pub fn is_sub_S<G: Adjacency>(g: &G, k: usize) -> Option<Vec<usize>> {
    cover_at_most(&adjacency_lists(g), None, k)
}

#[allow(non_snake_case)]
/// A set `K` of size at most `k` whose complement induces at most one edge.
pub fn is_sub_S_plus<G: Adjacency>(g: &G, k: usize) -> Option<Vec<usize>> {
    s_plus_cover_at_most(&adjacency_lists(g), k).map(|(c, _)| c)
}

/// The family an exceptional graph falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    SSub,
    SPlusSub,
    LExact,
    BookSub,
    DoubleLExact,
    None,
}

impl Family {
    pub fn clause(self) -> &'static str {
        match self {
            Family::SSub | Family::SPlusSub => "i",
            Family::LExact => "ii",
            Family::BookSub => "iii",
            Family::DoubleLExact => "iv",
            Family::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMatch {
    pub matched: Family,
    pub clause: String,
    pub k: usize,
    pub t: Option<usize>,
    pub s: Option<usize>,
    /// `SSub`: `[K]`. `SPlusSub`: `[K, outside edge]`. `LExact`: `[[centre]]`.
    /// `BookSub`: `[[u], part, part, …]`. `DoubleLExact`: `[[centre, centre]]`.
    pub witness: Vec<Vec<usize>>,
}

impl FamilyMatch {
    fn new(matched: Family, k: usize, t: Option<usize>, s: Option<usize>, witness: Vec<Vec<usize>>) -> Self {
        FamilyMatch { matched, clause: matched.clause().to_string(), k, t, s, witness }
    }

    pub fn is_match(&self) -> bool {
        self.matched != Family::None
    }

    /// Re-checks the containment witnesses against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut inside = vec![false; n];
        match self.matched {
            Family::SSub | Family::SPlusSub => {
                if self.witness[0].len() > self.k {
                    return false;
                }
                for &v in &self.witness[0] {
                    inside[v] = true;
                }
                let outside = g.edges().filter(|&(u, v)| !inside[u] && !inside[v]).count();
                outside <= usize::from(self.matched == Family::SPlusSub)
            }
            Family::BookSub => {
                let u = self.witness[0][0];
                let mut part = vec![usize::MAX; n];
                for (i, p) in self.witness[1..].iter().enumerate() {
                    for &v in p {
                        part[v] = i;
                    }
                }
                g.edges().all(|(a, b)| a == u || b == u || part[a] == part[b])
            }
            _ => true,
        }
    }
}

/// First matching exceptional clause for a connected graph, in order (i)–(iv).
///
/// (i) `G ⊂ S(n,k)` or `G ⊂ S⁺(n,k)`; (ii) `n = tk+1` and `G ≅ L(t,k)`;
/// (iii) `n = tk+2` and `G ⊂ K₁ ∨ ((t−1)K_k ∪ K_{k+1})`;
/// (iv) `n = (s+t)k+2` and `G` is two `L` graphs with joined centres.
pub fn classify_exceptional(g: &Graph, k: usize) -> Result<FamilyMatch> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("classification needs k >= 2, got {k}")));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let adj = adjacency_lists(g);
    if let Some(c) = cover_at_most(&adj, None, k) {
        return Ok(FamilyMatch::new(Family::SSub, k, None, None, vec![c]));
    }
    if let Some((c, Some((a, b)))) = s_plus_cover_at_most(&adj, k) {
        return Ok(FamilyMatch::new(Family::SPlusSub, k, None, None, vec![c, vec![a, b]]));
    }
    if n > 1 && (n - 1).is_multiple_of(k) {
        let t = (n - 1) / k;
        if is_isomorphic(g, &make_family(FamilySpec::L { t, k })?) {
            let centre = dominating_vertex(g).expect("L has a centre");
            return Ok(FamilyMatch::new(Family::LExact, k, Some(t), None, vec![vec![centre]]));
        }
    }
    if n > 2 && (n - 2).is_multiple_of(k) && n - 2 >= k {
        let t = (n - 2) / k;
        if let Some(w) = book_witness(g, t, k) {
            return Ok(FamilyMatch::new(Family::BookSub, k, Some(t), None, w));
        }
        // s + t = (n−2)/k with s ≤ t
        for s in 1..=t / 2 {
            let model = make_family(FamilySpec::DoubleL { s, t: t - s, k })?;
            if is_isomorphic(g, &model) {
                let centres = blocks_and_cut_vertices(g)?.cut_vertices;
                return Ok(FamilyMatch::new(Family::DoubleLExact, k, Some(t - s), Some(s), vec![centres]));
            }
        }
    }
    Ok(FamilyMatch::new(Family::None, k, None, None, Vec::new()))
}

/// A vertex `u` such that the components of `G − u` pack exactly into
/// `t − 1` parts of size `k` and one of size `k + 1`.
fn book_witness(g: &Graph, t: usize, k: usize) -> Option<Vec<Vec<usize>>> {
    let mut caps = vec![k; t - 1];
    caps.push(k + 1);
    for u in 0..g.n() {
        let (rest, map) = g.induced(g.vertex_mask() & !(1u64 << u)).ok()?;
        let mut comps: Vec<Vec<usize>> =
            components(&rest).into_iter().map(|c| c.into_iter().map(|v| map[v]).collect()).collect();
        if comps.iter().any(|c| c.len() > k + 1) {
            continue;
        }
        comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut load = vec![0usize; caps.len()];
        let mut assign = vec![0usize; comps.len()];
        if pack(&comps, &caps, 0, &mut load, &mut assign) {
            let mut parts = vec![Vec::new(); caps.len()];
            for (c, &b) in comps.iter().zip(&assign) {
                parts[b].extend_from_slice(c);
            }
            let mut witness = vec![vec![u]];
            for mut p in parts {
                p.sort_unstable();
                witness.push(p);
            }
            return Some(witness);
        }
    }
    None
}

fn pack(comps: &[Vec<usize>], caps: &[usize], i: usize, load: &mut [usize], assign: &mut [usize]) -> bool {
    if i == comps.len() {
        return true;
    }
    let size = comps[i].len();
    for b in 0..caps.len() {
        // bins with identical capacity and load are interchangeable
        if (0..b).any(|a| caps[a] == caps[b] && load[a] == load[b]) {
            continue;
        }
        if load[b] + size <= caps[b] {
            load[b] += size;
            assign[i] = b;
            if pack(comps, caps, i + 1, load, assign) {
                return true;
            }
            load[b] -= size;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(spec: FamilySpec) -> Graph {
        make_family(spec).unwrap()
    }

    #[test]
    fn dominating_examples() {
        assert_eq!(dominating_vertex(&fam(FamilySpec::S { n: 9, k: 2 })), Some(0));
        assert_eq!(dominating_vertex(&Graph::cycle(5).unwrap()), None);
        assert_eq!(dominating_vertex(&Graph::empty(1).unwrap()), Some(0));
    }

    #[test]
    fn cover_examples() {
        assert_eq!(is_sub_S(&fam(FamilySpec::S { n: 9, k: 2 }), 2), Some(vec![0, 1]));
        assert_eq!(is_sub_S(&Graph::cycle(5).unwrap(), 2), None);
        assert_eq!(is_sub_S(&Graph::star(8).unwrap(), 1), Some(vec![0]));
        assert!(is_sub_S_plus(&fam(FamilySpec::SPlus { n: 9, k: 2 }), 2).is_some());
        assert!(is_sub_S_plus(&fam(FamilySpec::S { n: 9, k: 2 }), 2).is_some());
        assert_eq!(is_sub_S_plus(&Graph::cycle(5).unwrap(), 1), None);
    }

    #[test]
    fn classify_examples() {
        let m = classify_exceptional(&fam(FamilySpec::L { t: 3, k: 2 }), 2).unwrap();
        assert_eq!((m.matched, m.clause.as_str(), m.t), (Family::LExact, "ii", Some(3)));
        assert_eq!(m.witness, vec![vec![0]]);
        let m = classify_exceptional(&fam(FamilySpec::DoubleL { s: 2, t: 2, k: 2 }), 2).unwrap();
        assert_eq!((m.matched, m.clause.as_str()), (Family::DoubleLExact, "iv"));
        assert_eq!(m.witness, vec![vec![0, 5]]);
        let g = fam(FamilySpec::SPlus { n: 9, k: 2 });
        let m = classify_exceptional(&g, 2).unwrap();
        assert_eq!((m.matched, m.clause.as_str()), (Family::SPlusSub, "i"));
        assert!(m.validate(&g));
        let g = fam(FamilySpec::Book { t: 3, k: 2 });
        let m = classify_exceptional(&g, 2).unwrap();
        assert_eq!((m.matched, m.t), (Family::BookSub, Some(3)));
        assert!(m.validate(&g));
        let m = classify_exceptional(&Graph::cycle(9).unwrap(), 2).unwrap();
        assert_eq!((m.matched, m.clause.as_str()), (Family::None, "none"));
        assert!(matches!(classify_exceptional(&Graph::empty(3).unwrap(), 2), Err(Error::Disconnected)));
        assert!(classify_exceptional(&Graph::cycle(5).unwrap(), 1).is_err());
    }

    #[test]
    fn book_subgraph_without_dominating_vertex() {
        // Book(2,2) minus the spokes from the centre to one triangle vertex.
        let mut g = fam(FamilySpec::Book { t: 2, k: 2 });
        g.remove_edge(0, 5).unwrap();
        assert_eq!(dominating_vertex(&g), None);
        let m = classify_exceptional(&g, 2).unwrap();
        assert_eq!(m.matched, Family::BookSub);
        assert!(m.validate(&g));
    }

    #[test]
    fn bowtie_is_caught_by_the_first_clause() {
        let m = classify_exceptional(&fam(FamilySpec::L { t: 2, k: 2 }), 2).unwrap();
        assert_eq!(m.matched, Family::SPlusSub);
    }

    #[test]
    fn models_classify_to_their_clause() {
        for k in 2..=3 {
            for t in 2..=4 {
                if t * k < 14 && t * k + 1 >= 2 * k + 3 {
                    let m = classify_exceptional(&fam(FamilySpec::L { t, k }), k).unwrap();
                    assert_eq!((m.matched, m.t), (Family::LExact, Some(t)), "L({t},{k})");
                }
                if t * k + 2 <= 14 {
                    let m = classify_exceptional(&fam(FamilySpec::Book { t, k }), k).unwrap();
                    assert_eq!((m.matched, m.t), (Family::BookSub, Some(t)), "Book({t},{k})");
                }
                for s in 2..=4 {
                    if (s + t) * k + 2 <= 14 {
                        let m = classify_exceptional(&fam(FamilySpec::DoubleL { s, t, k }), k).unwrap();
                        assert_eq!(m.matched, Family::DoubleLExact, "DoubleL({s},{t},{k})");
                        assert_eq!(m.s.unwrap() + m.t.unwrap(), s + t);
                    }
                }
            }
            for n in k + 3..=14 {
                let m = classify_exceptional(&fam(FamilySpec::SPlus { n, k }), k).unwrap();
                assert_eq!(m.matched, Family::SPlusSub);
                let m = classify_exceptional(&fam(FamilySpec::S { n, k }), k).unwrap();
                assert_eq!(m.matched, Family::SSub);
            }
        }
    }
}
