//! Isomorph-free generation of all graphs of a given order.
//!
//! Canonical augmentation by vertex addition. Every graph of order `n`
//! arises from a representative of order `n − 1` by adding vertex `n − 1`
//! with some neighbourhood `S`. A child is kept when
//!
//! 1. `S` is the smallest set in its orbit under the parent's automorphism
//!    group, and
//! 2. the new vertex lies in the orbit of the child's canonical deletion
//!    vertex: among vertices maximising `(degree, sum of neighbour degrees)`,
//!    the one with the smallest canonical position.
//!
//! Together these give exactly one representative per isomorphism class,
//! with no global de-duplication table. Output order is deterministic:
//! parents in their own order, then neighbourhoods by increasing bitmask.

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graph::canon::{canonical_labeling, Labeling, UnionFind};
use crate::graph::connectivity::is_connected;
use crate::graph::{bit, Bits, Graph};

/// Largest order the enumerator accepts.
pub const MAX_ENUM_ORDER: usize = 10;

/// Orders up to this one are cached in memory once generated.
const MAX_CACHED_ORDER: usize = 9;

type Level = Arc<Vec<Graph>>;

fn cache() -> &'static Mutex<Vec<Option<Level>>> {
    static CACHE: OnceLock<Mutex<Vec<Option<Level>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![None; MAX_CACHED_ORDER + 1]))
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUM_ORDER {
        Err(Error::EnumerationRange { n, max: MAX_ENUM_ORDER })
    } else {
        Ok(())
    }
}

/// All graphs of order `n ≤ 9`, one per isomorphism class, cached.
pub fn graphs_of_order(n: usize) -> Result<Level> {
    check_order(n)?;
    if n > MAX_CACHED_ORDER {
        return Err(Error::EnumerationRange { n, max: MAX_CACHED_ORDER });
    }
    if let Some(level) = cache().lock().expect("enumeration cache poisoned")[n].clone() {
        return Ok(level);
    }
    let level: Level = if n == 1 {
        Arc::new(vec![Graph::empty(1)?])
    } else {
        let parents = graphs_of_order(n - 1)?;
        let mut out = Vec::new();
        for p in parents.iter() {
            extend_children(p, &mut out);
        }
        Arc::new(out)
    };
    log::debug!("enumerated {} graphs of order {n}", level.len());
    cache().lock().expect("enumeration cache poisoned")[n] = Some(level.clone());
    Ok(level)
}

/// Parent representatives from which order `n` is generated (`None` for `n = 1`).
pub fn parents_of_order(n: usize) -> Result<Option<Level>> {
    check_order(n)?;
    if n == 1 {
        Ok(None)
    } else {
        graphs_of_order(n - 1).map(Some)
    }
}

/// Stream of the graphs of order `n`, optionally connected ones only.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Box<dyn Iterator<Item = Graph> + Send>> {
    check_order(n)?;
    let keep = move |g: &Graph| !connected_only || is_connected(g);
    if n <= MAX_CACHED_ORDER {
        let level = graphs_of_order(n)?;
        let iter = (0..level.len()).map(move |i| level[i].clone()).filter(move |g| keep(g));
        return Ok(Box::new(iter));
    }
    let parents = graphs_of_order(n - 1)?;
    let iter = (0..parents.len())
        .flat_map(move |i| {
            let mut out = Vec::new();
            extend_children(&parents[i], &mut out);
            out
        })
        .filter(move |g| keep(g));
    Ok(Box::new(iter))
}

/// Number of graphs of order `n` (and the connected ones) produced by the enumerator.
pub fn class_counts(n: usize) -> Result<(u64, u64)> {
    let mut total = 0;
    let mut connected = 0;
    for g in enumerate_graphs(n, false)? {
        total += 1;
        connected += u64::from(is_connected(&g));
    }
    Ok((total, connected))
}

/// Appends the accepted one-vertex extensions of `parent` to `out`.
pub fn extend_children(parent: &Graph, out: &mut Vec<Graph>) {
    let m = parent.n();
    let labeling = canonical_labeling(parent);
    let reps = subset_orbit_representatives(m, &labeling);
    for s in 0..(1u64 << m) {
        if reps[s as usize] != s {
            continue;
        }
        let child = parent.with_vertex(s).expect("enumeration order stays within the compact limit");
        if accepts_last_vertex(&child) {
            out.push(child);
        }
    }
}

/// For each subset of `0..m`, the smallest subset in its automorphism orbit.
fn subset_orbit_representatives(m: usize, labeling: &Labeling) -> Vec<u64> {
    let size = 1usize << m;
    if labeling.generators.is_empty() {
        return (0..size as u64).collect();
    }
    let mut uf = UnionFind::new(size);
    for a in &labeling.generators {
        for s in 0..size as u64 {
            let image = Bits(s).fold(0u64, |acc, v| acc | bit(a[v] as usize));
            uf.union(s as usize, image as usize);
        }
    }
    (0..size).map(|s| uf.find(s) as u64).collect()
}

fn deletion_key(g: &Graph, v: usize) -> u32 {
    let row = g.row(v);
    let nsum: u32 = Bits(row).map(|w| g.row(w).count_ones()).sum();
    (row.count_ones() << 12) | nsum
}

/// Whether the last vertex is in the orbit of the canonical deletion vertex.
fn accepts_last_vertex(g: &Graph) -> bool {
    let n = g.n();
    let last = n - 1;
    let keys: Vec<u32> = (0..n).map(|v| deletion_key(g, v)).collect();
    let top = *keys.iter().max().expect("non-empty graph");
    if keys[last] != top {
        return false;
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| keys[v] == top).collect();
    if candidates.len() == 1 {
        return true;
    }
    let labeling = canonical_labeling(g);
    let pos = labeling.positions();
    let chosen = *candidates.iter().min_by_key(|&&v| pos[v]).expect("candidates non-empty");
    let orbits = labeling.orbits();
    orbits[chosen] == orbits[last]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(class_counts(1).unwrap(), (1, 1));
        assert_eq!(class_counts(2).unwrap(), (2, 1));
        assert_eq!(class_counts(3).unwrap(), (4, 2));
        assert_eq!(class_counts(4).unwrap(), (11, 6));
    }

    #[test]
    fn range_checked() {
        assert!(enumerate_graphs(0, false).is_err());
        assert!(enumerate_graphs(11, false).is_err());
    }

    #[test]
    fn deterministic_order() {
        let a: Vec<Graph> = enumerate_graphs(5, false).unwrap().collect();
        let mut out = Vec::new();
        for p in graphs_of_order(4).unwrap().iter() {
            extend_children(p, &mut out);
        }
        assert_eq!(a, out);
    }
}
