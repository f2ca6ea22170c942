use proptest::prelude::*;

use colorsat::canon::canonical_key;
use colorsat::graph::{binom2, saturation_number, turan_number, Edge, Graph};
use colorsat::{is_k_colorable, k_coloring, legal_moves};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), binom2(n)).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
        })
    })
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|e| (perm[e.u], perm[e.v]))).unwrap()
}

proptest! {
    #[test]
    fn graph6_round_trips(g in graph_strategy(20)) {
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn degrees_sum_to_twice_the_edges(g in graph_strategy(24)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        prop_assert_eq!(g.complement().edge_count(), binom2(g.n()) - g.edge_count());
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn multipartite_iff_complement_is_cliques(g in graph_strategy(10)) {
        let parts = g.complete_multipartite_parts();
        let h = g.complement();
        // Complement is a disjoint union of cliques iff adjacency in it is transitive.
        let transitive = (0..g.n()).all(|a| (0..g.n()).all(|b| (0..g.n()).all(|c| {
            a == c || !(h.has_edge(a, b) && h.has_edge(b, c)) || h.has_edge(a, c)
        })));
        prop_assert_eq!(parts.is_some(), transitive);
        if let Some(parts) = parts {
            prop_assert_eq!(parts.iter().map(|p| p.len()).sum::<usize>(), g.n());
            prop_assert!(parts.windows(2).all(|w| w[0].len() >= w[1].len()));
        }
    }

    #[test]
    fn sandwich_of_extremal_numbers(n in 2usize..40, k in 1usize..40) {
        prop_assume!(k < n);
        let (s, t) = (saturation_number(n, k).unwrap(), turan_number(n, k).unwrap());
        prop_assert!(s <= t);
        prop_assert!(t <= binom2(n));
        prop_assert!(turan_number(n, k + 1).unwrap() >= t);
    }

    #[test]
    fn canonical_key_ignores_labels(g in graph_strategy(10), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let h = permuted(&g, &perm);
        prop_assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
        prop_assert_eq!(canonical_key(&g).unwrap().to_graph().edge_count(), g.edge_count());
    }

    #[test]
    fn colorings_are_proper(g in graph_strategy(14), k in 1usize..5) {
        match k_coloring(&g, k) {
            Some(c) => prop_assert!(c.is_proper(&g)),
            None => prop_assert!(k < g.n()),
        }
        if is_k_colorable(&g, k) {
            for e in legal_moves(&g, k) {
                prop_assert!(!g.contains(e));
                prop_assert!(is_k_colorable(&g.with_edge(e).unwrap(), k));
            }
        }
    }
}

#[test]
fn graph6_known_strings() {
    assert_eq!(Graph::new(0).to_graph6(), "?");
    let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    assert_eq!(p3.to_graph6(), "Bg");
    assert_eq!(Graph::from_graph6("Bg").unwrap(), p3);
    assert!(Graph::from_graph6("B~~").is_err());
    assert!(Edge::try_new(2, 2).is_err());
}
