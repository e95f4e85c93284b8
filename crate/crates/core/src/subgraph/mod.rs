//! Paths, cycles and matchings.
//!
//! Path and cycle questions are answered by dynamic programming over vertex
//! subsets when the (twin-reduced) graph has at most [`EXACT_LIMIT`] vertices,
//! and by a budgeted branch-and-bound otherwise.

mod cover;
mod matching;
mod paths;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Adjacency;

pub(crate) use cover::{cover_at_most, s_plus_cover_at_most};
pub use matching::matching_number;
pub use paths::{
    cycle_lengths, has_cycle_of_length, has_cycle_of_length_with, has_path_of_order, has_path_of_order_with,
    longest_cycle, longest_cycle_order, longest_path, longest_path_from, longest_path_from_with, longest_path_order,
    SearchOptions, SearchResult, DEFAULT_NODE_BUDGET, EXACT_LIMIT,
};

/// A witness for a path, a cycle or a matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices")]
pub enum Certificate {
    Path(Vec<usize>),
    Cycle(Vec<usize>),
    Matching(Vec<(usize, usize)>),
}

impl Certificate {
    /// Vertices on the path or cycle, edges in the matching.
    pub fn size(&self) -> usize {
        match self {
            Certificate::Path(p) | Certificate::Cycle(p) => p.len(),
            Certificate::Matching(m) => m.len(),
        }
    }

    /// Checks the witness against `g`.
    pub fn validate<G: Adjacency>(&self, g: &G) -> Result<()> {
        let n = g.order();
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        let mut seen = vec![false; n];
        let mut mark = |v: usize| -> Result<()> {
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} repeated in certificate")));
            }
            Ok(())
        };
        match self {
            Certificate::Path(p) | Certificate::Cycle(p) => {
                if p.is_empty() {
                    return bad("empty path".into());
                }
                for &v in p {
                    mark(v)?;
                }
                for w in p.windows(2) {
                    if !g.has_edge(w[0], w[1]) {
                        return bad(format!("{} and {} are not adjacent", w[0], w[1]));
                    }
                }
                if let Certificate::Cycle(c) = self {
                    if c.len() < 3 {
                        return bad(format!("cycle of length {}", c.len()));
                    }
                    if !g.has_edge(c[c.len() - 1], c[0]) {
                        return bad("cycle does not close".into());
                    }
                }
            }
            Certificate::Matching(m) => {
                for &(u, v) in m {
                    mark(u)?;
                    mark(v)?;
                    if !g.has_edge(u, v) {
                        return bad(format!("{u}{v} is not an edge"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn adjacency_lists<G: Adjacency>(g: &G) -> Vec<Vec<usize>> {
    (0..g.order())
        .map(|u| {
            let mut nb: Vec<usize> = g.neighbors(u).collect();
            nb.sort_unstable();
            nb
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn certificate_validation() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(Certificate::Path(vec![0, 1, 2, 3, 4]).validate(&c5).is_ok());
        assert!(Certificate::Cycle(vec![0, 1, 2, 3, 4]).validate(&c5).is_ok());
        assert!(Certificate::Cycle(vec![0, 1, 2, 3]).validate(&c5).is_err());
        assert!(Certificate::Path(vec![0, 2]).validate(&c5).is_err());
        assert!(Certificate::Path(vec![0, 1, 0]).validate(&c5).is_err());
        assert!(Certificate::Matching(vec![(0, 1), (1, 2)]).validate(&c5).is_err());
        assert!(Certificate::Matching(vec![(0, 1), (2, 3)]).validate(&c5).is_ok());
        assert!(Certificate::Path(vec![7]).validate(&c5).is_err());
    }

    #[test]
    fn certificate_json() {
        let c = Certificate::Cycle(vec![0, 2, 1]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"Cycle","vertices":[0,2,1]}"#);
        assert_eq!(serde_json::from_str::<Certificate>(&s).unwrap(), c);
        let m = serde_json::to_string(&Certificate::Matching(vec![(0, 1)])).unwrap();
        assert_eq!(m, r#"{"kind":"Matching","vertices":[[0,1]]}"#);
    }
}
