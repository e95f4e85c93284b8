//! Undirected simple graphs.
//!
//! [`Graph`] is the compact representation used everywhere exhaustive work
//! happens: one `u64` neighbour mask per vertex, so the order is capped at
//! [`MAX_ORDER`]. [`SparseGraph`] keeps sorted adjacency lists and has no
//! order cap; it serves spectral computation and the large constructed
//! instances. Code that only needs neighbourhood queries is written against
//! the [`Adjacency`] trait and accepts either.

pub mod canon;
pub mod connectivity;
pub mod family;
pub mod graph6;

use std::fmt;

use crate::error::{Error, Result};

/// Largest order of the compact representation (one machine word per row).
pub const MAX_ORDER: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Read-only neighbourhood access shared by both representations.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn degree(&self, u: usize) -> usize;
    fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_;
    fn has_edge(&self, u: usize, v: usize) -> bool;

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    fn min_degree(&self) -> usize {
        (0..self.order()).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    fn max_degree(&self) -> usize {
        (0..self.order()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Compact undirected simple graph on at most [`MAX_ORDER`] vertices.
///
/// Row `u` of `adj` holds the neighbour set of `u` as a bitmask. Rows are
/// kept symmetric and loop-free by every mutating method.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        for (u, row) in g.adj.iter_mut().enumerate() {
            *row = all & !bit(u);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 1..n {
            g.add_edge(u - 1, u)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n - 1, 0)?;
        Ok(g)
    }

    /// Star `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let mut g = Graph::empty(leaves + 1)?;
        for v in 1..=leaves {
            g.add_edge(0, v)?;
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        let mask = low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & bit(u) != 0 {
                return Err(Error::Loop(u));
            }
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange { v: 63 - (row & !mask).leading_zeros() as usize, n });
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::InvalidArgument(format!("adjacency not symmetric at ({u},{v})")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Unchecked constructor for hot paths that maintain the invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_ORDER);
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn row(&self, u: usize) -> u64 {
        self.adj[u]
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Inserts `{u, v}`. Returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let fresh = self.adj[u] & bit(v) == 0;
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(fresh)
    }

    /// Consuming form of [`Graph::add_edge`].
    pub fn with_edge(mut self, u: usize, v: usize) -> Result<Self> {
        self.add_edge(u, v)?;
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let present = self.adj[u] & bit(v) != 0;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(present)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Sorted degree sequence, a cheap isomorphism invariant.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let adj = self.adj.iter().enumerate().map(|(u, &r)| !r & all & !bit(u)).collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced on `mask`, relabelled in increasing vertex order.
    /// Returns the graph together with the original label of each new vertex.
    pub fn induced(&self, mask: u64) -> Result<(Graph, Vec<usize>)> {
        let mask = mask & self.vertex_mask();
        let verts: Vec<usize> = Bits(mask).collect();
        if verts.is_empty() {
            return Err(Error::OrderOutOfRange { n: 0, max: MAX_ORDER });
        }
        let mut rows = vec![0u64; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.adj[u] & bit(v) != 0 {
                    rows[i] |= bit(j);
                }
            }
        }
        Ok((Graph { n: verts.len(), adj: rows }, verts))
    }

    /// Graph with vertex `order[i]` of `self` renamed to `i`.
    pub fn relabel(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = vec![0u64; self.n];
        for (i, &v) in order.iter().enumerate() {
            for w in Bits(self.adj[v]) {
                rows[i] |= bit(pos[w]);
            }
        }
        Graph { n: self.n, adj: rows }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Join `self ∨ other`: disjoint union plus every cross edge.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = self.vertex_mask();
        let right = low_mask(other.n) << self.n;
        for u in 0..self.n {
            g.adj[u] |= right;
        }
        for u in self.n..g.n {
            g.adj[u] |= left;
        }
        Ok(g)
    }

    /// Copy with one vertex appended, adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: u64) -> Result<Graph> {
        let n = self.n + 1;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        let neighbors = neighbors & self.vertex_mask();
        let new = self.n;
        let mut adj = self.adj.clone();
        for v in Bits(neighbors) {
            adj[v] |= bit(new);
        }
        adj.push(neighbors);
        Ok(Graph { n, adj })
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }
}

impl Adjacency for Graph {
    #[inline]
    fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        Bits(self.adj[u])
    }

    #[inline]
    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {})", self.n, graph6::emit(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6::emit(self))
    }
}

/// Adjacency-list graph without an order cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseGraph {
    adj: Vec<Vec<usize>>,
}

impl SparseGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OrderOutOfRange { n, max: usize::MAX });
        }
        Ok(SparseGraph { adj: vec![Vec::new(); n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SparseGraph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for row in &mut g.adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.adj.len();
        if u >= n {
            return Err(Error::VertexOutOfRange { v: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                Ok(true)
            }
        }
    }

    /// Appends a vertex adjacent to `neighbors`; returns its index.
    pub fn add_vertex(&mut self, neighbors: &[usize]) -> Result<usize> {
        let new = self.adj.len();
        self.adj.push(Vec::new());
        for &v in neighbors {
            self.add_edge(new, v)?;
        }
        Ok(new)
    }

    pub fn neighbor_slice(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Graph with vertex `order[i]` renamed to `i`.
    pub fn relabel(&self, order: &[usize]) -> SparseGraph {
        let mut pos = vec![0usize; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![Vec::new(); order.len()];
        for (i, &v) in order.iter().enumerate() {
            let mut row: Vec<usize> = self.adj[v].iter().map(|&w| pos[w]).collect();
            row.sort_unstable();
            adj[i] = row;
        }
        SparseGraph { adj }
    }

    /// Compact copy, available when the order fits in one word per row.
    pub fn to_compact(&self) -> Result<Graph> {
        let n = self.adj.len();
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
        }
        let rows = self.adj.iter().map(|r| r.iter().fold(0u64, |m, &v| m | bit(v))).collect();
        Ok(Graph::from_rows_unchecked(rows))
    }
}

impl From<&Graph> for SparseGraph {
    fn from(g: &Graph) -> Self {
        SparseGraph { adj: (0..g.n()).map(|u| Bits(g.row(u)).collect()).collect() }
    }
}

impl Adjacency for SparseGraph {
    #[inline]
    fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_bounds() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.degrees().iter().all(|&d| d == 0));
        assert_eq!(Graph::empty(1).unwrap().n(), 1);
        assert_eq!(Graph::empty(64).unwrap().n(), 64);
        assert!(matches!(Graph::empty(0), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(Graph::empty(65), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn add_edge_is_idempotent_and_rejects_loops() {
        let mut g = Graph::empty(2).unwrap();
        assert!(g.add_edge(0, 1).unwrap());
        assert_eq!(g, Graph::complete(2).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(g.add_edge(0, 0), Err(Error::Loop(0))));
        assert!(matches!(g.add_edge(0, 2), Err(Error::VertexOutOfRange { v: 2, n: 2 })));
    }

    #[test]
    fn join_examples() {
        let k1 = Graph::empty(1).unwrap();
        let i4 = Graph::empty(4).unwrap();
        let star = k1.join(&i4).unwrap();
        assert_eq!(star.n(), 5);
        assert_eq!(star.edge_count(), 4);
        assert_eq!(star, Graph::star(4).unwrap());

        let s52 = Graph::complete(2).unwrap().join(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(s52.edge_count(), 7);

        let i2 = Graph::empty(2).unwrap();
        let c4 = i2.join(&i2).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2));

        let big = Graph::empty(40).unwrap();
        assert!(big.join(&big).is_err());
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(matches!(Graph::from_rows(vec![0b01, 0]), Err(Error::Loop(0))));
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
    }

    #[test]
    fn sparse_round_trip() {
        let g = Graph::cycle(7).unwrap();
        let s = SparseGraph::from(&g);
        assert_eq!(s.edge_count(), 7);
        assert_eq!(s.to_compact().unwrap(), g);
        assert_eq!(s.edge_list(), g.edge_list());
    }

    #[test]
    fn relabel_preserves_degrees() {
        let g = Graph::star(4).unwrap();
        let h = g.relabel(&[4, 3, 2, 1, 0]);
        assert_eq!(h.degree(4), 4);
        assert_eq!(h.degree_sequence(), g.degree_sequence());
    }
}
