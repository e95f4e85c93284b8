//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine to an equitable ordered
//! partition, individualise each vertex of the first non-singleton cell,
//! recurse. A leaf's certificate is the adjacency matrix relabelled by the
//! discrete partition; the canonical form is the largest certificate.
//!
//! Two prunings keep symmetric graphs cheap. A leaf whose certificate equals
//! the first (or best) leaf yields an automorphism, and the search abandons
//! the subtree back to where the two paths diverged. Children in the same
//! orbit as an explored sibling, under the automorphisms found so far that
//! fix the current prefix, are skipped. The automorphisms collected this way
//! generate the full group, so [`Labeling::orbits`] is exact.

use super::{bit, Adjacency, Bits, Graph};

/// Result of canonical labelling.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Adjacency rows of the canonically relabelled graph.
    pub form: Vec<u64>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<u8>>,
}

impl Labeling {
    /// Orbit representative (smallest vertex of the orbit) for every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.order.len();
        let mut uf = UnionFind::new(n);
        for a in &self.generators {
            for (v, &w) in a.iter().enumerate() {
                uf.union(v, w as usize);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }

    /// Canonical position of each vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn canonical_graph(&self) -> Graph {
        Graph::from_rows_unchecked(self.form.clone())
    }
}

/// Isomorphism-invariant key of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u64>);

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.n();
    let mut search = Search { rows: g.rows(), n, first: None, best: None, auts: Vec::new() };
    let mut cells = vec![g.vertex_mask()];
    refine(g.rows(), &mut cells);
    let mut path = Vec::with_capacity(n);
    search.explore(&cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    Labeling {
        order: best.order.iter().map(|&v| v as usize).collect(),
        form: best.form,
        generators: search.auts,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(canonical_labeling(g).form)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_form(g) == canonical_form(h)
}

/// Refines an ordered partition (cells as vertex masks) until equitable.
///
/// Cells are split by the number of neighbours in a splitter cell, the new
/// pieces ordered by that count. The procedure only inspects the cell
/// structure, so it commutes with relabelling.
pub(crate) fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    let mut s = 0;
    let mut buckets: Vec<(u32, u64)> = Vec::with_capacity(rows.len());
    while s < cells.len() {
        let splitter = cells[s];
        let mut split_any = false;
        let mut x = 0;
        while x < cells.len() {
            let cell = cells[x];
            if cell & (cell - 1) == 0 {
                x += 1;
                continue;
            }
            buckets.clear();
            for v in Bits(cell) {
                let c = (rows[v] & splitter).count_ones();
                match buckets.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= bit(v),
                    None => buckets.push((c, bit(v))),
                }
            }
            if buckets.len() == 1 {
                x += 1;
                continue;
            }
            buckets.sort_unstable_by_key(|&(c, _)| c);
            let pieces = buckets.len();
            cells.splice(x..=x, buckets.iter().map(|&(_, m)| m));
            x += pieces;
            split_any = true;
        }
        s = if split_any { 0 } else { s + 1 };
    }
}

struct Leaf {
    order: Vec<u8>,
    form: Vec<u64>,
    path: Vec<u8>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    auts: Vec<Vec<u8>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon the subtree chosen at `level`.
    fn explore(&mut self, cells: &[u64], path: &mut Vec<u8>) -> Option<usize> {
        let Some(target) = cells.iter().position(|&c| c & (c - 1) != 0) else {
            return self.leaf(cells, path);
        };
        let depth = path.len();
        let cell = cells[target];
        let mut explored: Vec<usize> = Vec::new();
        for v in Bits(cell) {
            if !explored.is_empty() && self.equivalent_to_explored(path, v, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cell & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.rows, &mut child);
            path.push(v as u8);
            let jump = self.explore(&child, path);
            path.pop();
            explored.push(v);
            match jump {
                Some(level) if level < depth => return Some(level),
                _ => {}
            }
        }
        None
    }

    fn equivalent_to_explored(&self, path: &[u8], v: usize, explored: &[usize]) -> bool {
        let fixing: Vec<&Vec<u8>> =
            self.auts.iter().filter(|a| path.iter().all(|&p| a[p as usize] == p)).collect();
        if fixing.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for a in fixing {
            for (x, &y) in a.iter().enumerate() {
                uf.union(x, y as usize);
            }
        }
        let rv = uf.find(v);
        explored.iter().any(|&w| uf.find(w) == rv)
    }

    fn leaf(&mut self, cells: &[u64], path: &[u8]) -> Option<usize> {
        let order: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let form = relabelled_rows(self.rows, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf { order, form, path: path.to_vec() };
            self.best = Some(Leaf { order: leaf.order.clone(), form: leaf.form.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if form == first.form {
            let aut = automorphism(&first.order, &order);
            let level = divergence(&first.path, path);
            self.auts.push(aut);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match form.cmp(&best.form) {
            std::cmp::Ordering::Equal => {
                let aut = automorphism(&best.order, &order);
                let level = divergence(&best.path, path);
                self.auts.push(aut);
                Some(level)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf { order, form, path: path.to_vec() });
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

fn relabelled_rows(rows: &[u64], order: &[u8]) -> Vec<u64> {
    let n = order.len();
    let mut pos = [0u8; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u8;
    }
    let mut out = vec![0u64; n];
    for (i, &v) in order.iter().enumerate() {
        let mut r = 0u64;
        for w in Bits(rows[v as usize]) {
            r |= bit(pos[w] as usize);
        }
        out[i] = r;
    }
    out
}

/// Map sending `from[i]` to `to[i]`.
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut a = vec![0u8; from.len()];
    for (&x, &y) in from.iter().zip(to) {
        a[x as usize] = y;
    }
    a
}

fn divergence(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union keeping the smaller root, so roots are orbit minima.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
