mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unitdist::catalog::{lattice_coords, lattice_point};
use unitdist::graph::{elimination_width, from_dimacs, from_json, to_dimacs, to_json};
use unitdist::{degeneracy, max_clique, UdGraph};

fn lattice_subset(seed: u64) -> UdGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = lattice_coords(3);
    let keep: f64 = rng.gen_range(0.2..0.9);
    let pts = coords
        .iter()
        .filter(|_| rng.gen_bool(keep))
        .map(|&(i, j)| lattice_point(i, j))
        .collect();
    UdGraph::from_points(pts).unwrap()
}

#[test]
fn lattice_subsets_are_k4_free_and_forced() {
    for seed in 0..200 {
        let g = lattice_subset(seed);
        assert!(max_clique(&g) <= 3);
        assert!(g.geometry_forced());
        assert_eq!(g.edges(), float_unit_pairs(&approx_points(&g)));
    }
}

fn abstract_graph() -> impl Strategy<Value = UdGraph> {
    (1usize..=12, prop::collection::vec((0usize..12, 0usize..12), 0..40)).prop_map(|(n, raw)| {
        let edges: Vec<_> = raw
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .collect();
        UdGraph::from_edges(n, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn degeneracy_report_is_valid(g in abstract_graph()) {
        let r = degeneracy(&g);
        let mut order = r.elimination_order.clone();
        order.sort();
        prop_assert_eq!(order, (0..g.n()).collect::<Vec<_>>());
        prop_assert_eq!(elimination_width(&g, &r.elimination_order), r.degeneracy);
        prop_assert_eq!(r.degeneracy, brute_degeneracy(g.n(), &g.edges()));
        prop_assert_eq!(r.min_degree, g.min_degree());
    }

    #[test]
    fn clique_matches_brute_force(g in abstract_graph()) {
        prop_assert_eq!(max_clique(&g), brute_clique(g.n(), &g.edges()));
    }

    #[test]
    fn serialization_round_trips(g in abstract_graph(), seed in 0u64..50) {
        prop_assert_eq!(from_dimacs(&to_dimacs(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
        let geo = lattice_subset(seed);
        let text = to_json(&geo);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(to_json(&back), text);
        prop_assert_eq!(back, geo);
    }
}
