mod common;

use common::arb_graph;
use partial_transversals::graph::{ClassSet, MultipartiteGraph, VertexRef, VertexSet};
use proptest::prelude::*;

fn arb_subset(g: &MultipartiteGraph, mask: &[bool]) -> VertexSet {
    g.vertices()
        .zip(mask.iter().cycle())
        .filter(|(_, &k)| k)
        .map(|(v, _)| v)
        .collect()
}

proptest! {
    #[test]
    fn mpg_round_trip(g in arb_graph(0..=6, 0..=4)) {
        let text = g.to_mpg();
        let back = MultipartiteGraph::from_mpg(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_mpg(), text);
    }

    #[test]
    fn induced_subgraph_keeps_sizes_and_bounds_degree(
        g in arb_graph(1..=6, 1..=4),
        keep in prop::collection::vec(any::<bool>(), 6),
    ) {
        let y: ClassSet = (0..g.num_classes()).filter(|&c| keep[c]).collect();
        let sub = g.induced_on_classes(&y);
        prop_assert_eq!(sub.num_classes(), y.len());
        prop_assert!(sub.max_degree() <= g.max_degree());
        for (k, c) in y.iter().enumerate() {
            prop_assert_eq!(sub.class_size(k), g.class_size(c));
        }
        let within = g.vertices_of_classes(&y);
        prop_assert_eq!(sub.num_edges(), g.induced_edges(&within).len());
    }

    #[test]
    fn domination_is_monotone(
        g in arb_graph(1..=5, 1..=4),
        s_mask in prop::collection::vec(any::<bool>(), 1..8),
        extra in any::<prop::sample::Index>(),
    ) {
        let s = arb_subset(&g, &s_mask);
        let all: VertexSet = g.vertices().collect();
        let mut bigger = s.clone();
        let verts: Vec<VertexRef> = all.to_vec();
        if !verts.is_empty() {
            bigger.insert(verts[extra.index(verts.len())]);
        }
        let before = g.undominated(&s, &all);
        let after = g.undominated(&bigger, &all);
        prop_assert!(after.is_subset(&before));
        if g.dominates(&s, &all) {
            prop_assert!(g.dominates(&bigger, &all));
        }
        prop_assert_eq!(g.dominates(&s, &all), before.is_empty());
    }

    #[test]
    fn neighborhood_is_symmetric(g in arb_graph(1..=5, 1..=3)) {
        for v in g.vertices() {
            let single: VertexSet = [v].into_iter().collect();
            for u in g.neighborhood(&single).iter() {
                prop_assert!(g.is_adjacent(u, v));
                prop_assert!(u.part != v.part);
            }
            prop_assert_eq!(g.degree(v).unwrap(), g.neighborhood(&single).len());
        }
    }
}
