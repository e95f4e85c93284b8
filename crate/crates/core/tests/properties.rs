use proptest::prelude::*;

use qindex_core::graph::graph6;
use qindex_core::spectral::{das_bound, merris_bound, q_index, GUARD_BAND};
use qindex_core::structure::{is_sub_S, peel_with, PeelChoice};
use qindex_core::subgraph::{longest_cycle_order, longest_path_from, longest_path_order, matching_number};
use qindex_core::{Adjacency, Graph, DEFAULT_TOL};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A graph together with one extra edge not already present (if any).
fn graph_plus_edge(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    (graph(max_n), any::<prop::sample::Index>()).prop_map(|(g, idx)| {
        let missing: Vec<(usize, usize)> =
            (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        if missing.is_empty() {
            return (g.clone(), g);
        }
        let (u, v) = missing[idx.index(missing.len())];
        let h = g.clone().with_edge(u, v).unwrap();
        (g, h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn handshake(g in graph(20)) {
        let total: usize = (0..g.n()).map(|u| g.degree(u)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn graph6_round_trip(g in graph(40)) {
        let text = graph6::emit(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(graph6::parse(&text).unwrap(), g);
    }

    #[test]
    fn adding_an_edge_never_decreases_invariants((g, h) in graph_plus_edge(10)) {
        let qg = q_index(&g, DEFAULT_TOL).unwrap().q;
        let qh = q_index(&h, DEFAULT_TOL).unwrap().q;
        prop_assert!(qh >= qg - GUARD_BAND);
        prop_assert!(longest_path_order(&h).unwrap().0 >= longest_path_order(&g).unwrap().0);
        prop_assert!(longest_cycle_order(&h).unwrap().0 >= longest_cycle_order(&g).unwrap().0);
        prop_assert!(matching_number(&h).0 >= matching_number(&g).0);
    }

    #[test]
    fn q_below_merris_and_das(g in graph(14)) {
        let q = q_index(&g, DEFAULT_TOL).unwrap().q;
        if g.min_degree() >= 1 {
            prop_assert!(q <= merris_bound(&g) + GUARD_BAND);
        }
        if g.n() >= 2 {
            prop_assert!(q <= das_bound(&g).unwrap() + GUARD_BAND);
        }
    }

    #[test]
    fn cover_membership_is_monotone((g, h) in graph_plus_edge(12), k in 1usize..5) {
        // Removing an edge keeps a cover; enlarging k keeps it too.
        if is_sub_S(&h, k).is_some() {
            prop_assert!(is_sub_S(&g, k).is_some());
        }
        if is_sub_S(&g, k).is_some() {
            prop_assert!(is_sub_S(&g, k + 1).is_some());
        }
        if let Some(cover) = is_sub_S(&g, k) {
            prop_assert!(cover.len() <= k);
            prop_assert!(g.edges().all(|(u, v)| cover.contains(&u) || cover.contains(&v)));
        }
    }

    #[test]
    fn peeling_survivors_do_not_depend_on_choice(g in graph(16), k in 1usize..5, seed in any::<u64>()) {
        let a = peel_with(&g, k, PeelChoice::MinIndex).unwrap();
        let b = peel_with(&g, k, PeelChoice::Random(seed)).unwrap();
        prop_assert_eq!(&a.survivors, &b.survivors);
        prop_assert_eq!(a.removed.len(), b.removed.len());
        for &v in &a.survivors {
            let d = g.neighbors(v).filter(|w| a.survivors.binary_search(w).is_ok()).count();
            prop_assert!(d >= k);
        }
    }

    #[test]
    fn rooted_paths_agree_with_longest_path(g in graph(10)) {
        let best = longest_path_order(&g).unwrap().0;
        let rooted: Vec<usize> = (0..g.n()).map(|u| longest_path_from(&g, u).unwrap()).collect();
        prop_assert_eq!(rooted.iter().copied().max().unwrap(), best);
        prop_assert!(rooted.iter().all(|&r| r >= 1 && r <= best));
    }

    #[test]
    fn certificates_are_valid(g in graph(12)) {
        let (l, cert) = longest_path_order(&g).unwrap();
        prop_assert_eq!(cert.size(), l);
        prop_assert!(cert.validate(&g).is_ok());
        let (c, cert) = longest_cycle_order(&g).unwrap();
        match cert {
            Some(cert) => {
                prop_assert_eq!(cert.size(), c);
                prop_assert!(cert.validate(&g).is_ok());
            }
            None => prop_assert_eq!(c, 0),
        }
        let (nu, cert) = matching_number(&g);
        prop_assert_eq!(cert.size(), nu);
        prop_assert!(cert.validate(&g).is_ok());
    }
}
