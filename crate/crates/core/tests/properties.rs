//! Cross-module invariants on randomized inputs.

use proptest::prelude::*;

use symkit::aut::{automorphism_generators, canonical_form, is_asymmetric};
use symkit::fixing::{fixing_number, greedy_fixing_set, is_fixing_set};
use symkit::graph::{all_pairs_distances, disjoint_union, Dist, Graph};
use symkit::io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use symkit::perm::{compose, Permutation};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|(k, _)| mask >> (k % 64) & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn graph_invariants_and_unit_distances(g in arb_graph(8)) {
        g.validate().unwrap();
        let d = all_pairs_distances(&g);
        for u in g.vertices() {
            prop_assert_eq!(d.get(u, u), Dist::Finite(0));
            for v in g.vertices() {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                prop_assert_eq!(d.get(u, v) == Dist::Finite(1), g.has_edge(u, v));
            }
        }
        // triangle inequality within components
        for u in g.vertices() {
            for v in g.vertices() {
                for w in g.vertices() {
                    if let (Dist::Finite(a), Dist::Finite(b)) = (d.get(u, v), d.get(v, w)) {
                        match d.get(u, w) {
                            Dist::Finite(c) => prop_assert!(c <= a + b),
                            Dist::Infinite => prop_assert!(false, "u, w connected through v"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn union_components_add(a in arb_graph(5), b in arb_graph(5)) {
        let expected = a.components().len() + b.components().len();
        let (g, _) = disjoint_union(&[a, b]).unwrap();
        prop_assert_eq!(g.components().len(), expected);
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        let bytes = emit_graph6(&g).unwrap();
        let back = parse_graph6(&bytes).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_graph6(&back).unwrap(), bytes);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        let text = emit_edge_list(&g);
        prop_assert_eq!(parse_edge_list(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn compose_is_associative_and_identity_neutral(
        (a, b, c) in (2usize..8).prop_flat_map(|n| (arb_permutation(n), arb_permutation(n), arb_permutation(n)))
    ) {
        let id = Permutation::identity(a.degree());
        prop_assert_eq!(compose(&a, &id).unwrap(), a.clone());
        prop_assert_eq!(compose(&id, &a).unwrap(), a.clone());
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn generators_preserve_adjacency_and_fix_seeds(g in arb_graph(8), seed_mask in any::<u8>()) {
        let fixed: Vec<usize> = g.vertices().filter(|&v| seed_mask >> v & 1 == 1).collect();
        let aut = automorphism_generators(&g, &fixed);
        for p in aut.generators.generators() {
            for (u, v) in g.edges() {
                prop_assert!(g.has_edge(p.image(u), p.image(v)));
            }
            for &f in &fixed {
                prop_assert_eq!(p.image(f), f);
            }
        }
        // generators leave each orbit cell invariant
        for p in aut.generators.generators() {
            for v in g.vertices() {
                prop_assert!(aut.orbit_partition.same_orbit(v, p.image(v)));
            }
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(
        (g, p) in arb_graph(8).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), arb_permutation(n))
        })
    ) {
        prop_assert_eq!(canonical_form(&g.relabeled(p.images())), canonical_form(&g));
    }

    #[test]
    fn orbits_refine_distance_profiles(g in arb_graph(8)) {
        let aut = automorphism_generators(&g, &[]);
        let d = all_pairs_distances(&g);
        let profile = |v: usize| {
            let mut row: Vec<Dist> = g.vertices().map(|u| d.get(v, u)).collect();
            row.sort();
            row
        };
        for cell in aut.orbit_partition.cells() {
            let p0 = profile(cell[0]);
            for &v in cell {
                prop_assert_eq!(profile(v), p0.clone());
            }
        }
    }

    #[test]
    fn exact_fix_is_sound_and_bounded(g in arb_graph(7)) {
        let exact = fixing_number(&g).unwrap();
        let greedy = greedy_fixing_set(&g);
        prop_assert!(exact.fix_number <= greedy.fix_number);
        prop_assert!(exact.fix_number < g.order());
        prop_assert!(is_fixing_set(&g, &exact.witness).unwrap());
        prop_assert!(is_fixing_set(&g, &greedy.witness).unwrap());
        prop_assert_eq!(exact.fix_number == 0, is_asymmetric(&g));
    }

    /// No asymmetric graph has two vertices adjacent to everything else.
    #[test]
    fn asymmetric_graphs_have_at_most_one_dominating_vertex(g in arb_graph(8)) {
        if is_asymmetric(&g) {
            let n = g.order();
            let full = g.vertices().filter(|&v| g.degree(v) == n - 1).count();
            prop_assert!(full <= 1);
        }
    }
}
