//! Bounded vertex-cover search.

/// A vertex cover of size at most `k`, ignoring the edge `skip`. Sorted.
pub(crate) fn cover_at_most(adj: &[Vec<usize>], skip: Option<(usize, usize)>, k: usize) -> Option<Vec<usize>> {
    let skip = skip.map(|(a, b)| (a.min(b), a.max(b)));
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .filter(|&e| Some(e) != skip)
        .collect();
    let mut chosen = Vec::new();
    let mut deg = vec![0usize; adj.len()];
    if branch(&edges, k, &mut chosen, &mut deg) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// A set `K`, `|K| ≤ k`, whose complement spans at most one edge; the edge if any.
pub(crate) fn s_plus_cover_at_most(adj: &[Vec<usize>], k: usize) -> Option<(Vec<usize>, Option<(usize, usize)>)> {
    if let Some(c) = cover_at_most(adj, None, k) {
        return Some((c, None));
    }
    // G needs a cover of size k+1 for any edge to be left outside K.
    cover_at_most(adj, None, k + 1)?;
    for (u, nb) in adj.iter().enumerate() {
        for &v in nb.iter().filter(|&&v| u < v) {
            if let Some(c) = cover_at_most(adj, Some((u, v)), k) {
                return Some((c, Some((u, v))));
            }
        }
    }
    None
}

fn branch(edges: &[(usize, usize)], k: usize, chosen: &mut Vec<usize>, deg: &mut [usize]) -> bool {
    if edges.is_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    deg.iter_mut().for_each(|d| *d = 0);
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let (v, dv) = deg.iter().copied().enumerate().fold((0, 0), |acc, (v, d)| if d > acc.1 { (v, d) } else { acc });
    if edges.len() > k * dv {
        return false;
    }
    let candidates: &[usize] = if dv > k { &[v] } else { &[edges[0].0, edges[0].1] };
    for &x in candidates {
        let rest: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| a != x && b != x).collect();
        chosen.push(x);
        if branch(&rest, k - 1, chosen, deg) {
            return true;
        }
        chosen.pop();
    }
    false
}
