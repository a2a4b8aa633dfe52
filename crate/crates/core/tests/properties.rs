//! Property tests over randomly generated graphs.

use proptest::prelude::*;

use specrad_core::detect::{has_cycle, has_path, longest_path_order};
use specrad_core::graph::Graph;
use specrad_core::graph6;
use specrad_core::spectral::spectral_radius_default;

/// Random graph of order 1..=12 as (n, edge mask over the n(n-1)/2 pairs).
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << bits)).prop_map(|(n, mask)| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| (mask >> b) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(11)) {
        let text = graph6::encode(&g);
        let back = graph6::decode(&text).unwrap();
        prop_assert_eq!(back.adjacency_rows(), g.adjacency_rows());
    }

    #[test]
    fn canonical_form_invariant_under_relabeling(
        g in arb_graph(8),
        seed in 0usize..5040,
    ) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        // Lehmer-style shuffle driven by the seed.
        let mut s = seed;
        for i in (1..n).rev() {
            perm.swap(i, s % (i + 1));
            s /= i + 1;
        }
        let h = g.permuted(&perm);
        prop_assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());
    }

    #[test]
    fn spectral_radius_between_average_degree_and_max(g in arb_graph(10)) {
        let r = spectral_radius_default(&g).unwrap();
        let n = g.order() as f64;
        let avg = 2.0 * g.edge_count() as f64 / n;
        prop_assert!(r.mu >= avg - 1e-9);
        prop_assert!(r.mu <= n - 1.0 + 1e-9);
        let norm: f64 = r.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn vertex_deletion_never_raises_mu(g in arb_graph(9), u in 0usize..9) {
        prop_assume!(g.order() >= 2);
        let u = u % g.order();
        let before = spectral_radius_default(&g).unwrap().mu;
        let after = spectral_radius_default(&g.delete_vertex(u).unwrap()).unwrap().mu;
        prop_assert!(after <= before + 1e-9);
    }

    #[test]
    fn path_presence_is_monotone_in_order(g in arb_graph(9)) {
        let longest = longest_path_order(&g);
        for l in 1..=g.order() {
            prop_assert_eq!(has_path(&g, l), l <= longest);
        }
    }

    #[test]
    fn cycles_contain_their_spanning_paths(g in arb_graph(9)) {
        for l in 3..=g.order() {
            if has_cycle(&g, l) {
                prop_assert!(has_path(&g, l));
            }
        }
    }
}
