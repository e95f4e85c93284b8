//! Maximum matching by Edmonds' blossom algorithm.

use std::collections::VecDeque;

use super::{adjacency_lists, Certificate};
use crate::graph::Adjacency;

const NONE: usize = usize::MAX;

/// Size of a maximum matching with its edges, each listed as `(u, v)` with `u < v`.
pub fn matching_number<G: Adjacency>(g: &G) -> (usize, Certificate) {
    let mut b = Blossom::new(adjacency_lists(g));
    let n = b.adj.len();
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(&w) = b.adj[v].iter().find(|&&w| b.mate[w] == NONE) {
                b.mate[v] = w;
                b.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(end) = b.find_path(v) {
                b.augment(end);
            }
        }
    }
    let edges: Vec<(usize, usize)> = (0..n).filter(|&v| b.mate[v] != NONE && v < b.mate[v]).map(|v| (v, b.mate[v])).collect();
    (edges.len(), Certificate::Matching(edges))
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Alternating-tree search from the exposed vertex `root`; the exposed end of an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let w = self.mate[to];
                    self.used[w] = true;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family::{make_family, FamilySpec};
    use crate::graph::{Graph, SparseGraph};

    fn nu(g: &Graph) -> usize {
        let (m, c) = matching_number(g);
        c.validate(g).unwrap();
        m
    }

    #[test]
    fn examples() {
        assert_eq!(nu(&Graph::star(6).unwrap()), 1);
        assert_eq!(nu(&make_family(FamilySpec::S { n: 9, k: 2 }).unwrap()), 2);
        assert_eq!(nu(&Graph::cycle(6).unwrap()), 3);
        assert_eq!(nu(&Graph::cycle(7).unwrap()), 3);
        assert_eq!(nu(&Graph::empty(3).unwrap()), 0);
        assert_eq!(nu(&Graph::complete(9).unwrap()), 4);
    }

    #[test]
    fn needs_blossom() {
        // Greedy pairs 0-1, 2-3; the perfect matching runs through the triangle.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (1, 5)]).unwrap();
        assert_eq!(nu(&g), 3);
        let petersen = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert_eq!(nu(&petersen), 5);
    }

    #[test]
    fn sparse_paths() {
        let edges: Vec<(usize, usize)> = (0..99).map(|i| (i, i + 1)).collect();
        let g = SparseGraph::from_edges(100, &edges).unwrap();
        let (m, c) = matching_number(&g);
        assert_eq!(m, 50);
        c.validate(&g).unwrap();
    }
}
