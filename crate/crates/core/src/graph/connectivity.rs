//! Components, blocks and cut vertices.

use super::Adjacency;
use crate::error::{Error, Result};

const UNSEEN: usize = usize::MAX;

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components<G: Adjacency>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected<G: Adjacency>(g: &G) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// Biconnected decomposition of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted; blocks sorted lexicographically.
    pub blocks: Vec<Vec<usize>>,
    /// Vertices lying in two or more blocks, ascending.
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    /// Blocks containing exactly one cut vertex.
    pub fn end_blocks(&self) -> Vec<&[usize]> {
        self.blocks
            .iter()
            .filter(|b| b.iter().filter(|v| self.cut_vertices.binary_search(v).is_ok()).count() == 1)
            .map(|b| b.as_slice())
            .collect()
    }

    pub fn is_biconnected(&self) -> bool {
        self.blocks.len() == 1
    }
}

/// Blocks and cut vertices via an iterative Hopcroft–Tarjan search.
pub fn blocks_and_cut_vertices<G: Adjacency>(g: &G) -> Result<BlockDecomposition> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    if n == 1 {
        return Ok(BlockDecomposition { blocks: vec![vec![0]], cut_vertices: Vec::new() });
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSEEN; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;

    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if *next < nbrs[u].len() {
            let v = nbrs[u][*next];
            *next += 1;
            if disc[v] == UNSEEN {
                parent[v] = u;
                disc[v] = time;
                low[v] = time;
                time += 1;
                edge_stack.push((u, v));
                stack.push((v, 0));
            } else if v != parent[u] && disc[v] < disc[u] {
                low[u] = low[u].min(disc[v]);
                edge_stack.push((u, v));
            }
            continue;
        }
        stack.pop();
        let Some(&(p, _)) = stack.last() else { break };
        low[p] = low[p].min(low[u]);
        if low[u] >= disc[p] {
            let mut block = Vec::new();
            while let Some((a, b)) = edge_stack.pop() {
                block.push(a);
                block.push(b);
                if (a, b) == (p, u) {
                    break;
                }
            }
            block.sort_unstable();
            block.dedup();
            blocks.push(block);
        }
    }

    blocks.sort();
    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            membership[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| membership[v] >= 2).collect();
    Ok(BlockDecomposition { blocks, cut_vertices })
}

/// Whether the graph is 2-connected (connected, at least 3 vertices, no cut vertex).
pub fn is_biconnected<G: Adjacency>(g: &G) -> bool {
    g.order() >= 3 && blocks_and_cut_vertices(g).map(|d| d.is_biconnected()).unwrap_or(false)
}
