mod common;

use common::arb_graph;
use partial_transversals::budget::Budget;
use partial_transversals::graph::MultipartiteGraph;
use partial_transversals::imc::{
    check_feasible, check_structure_lemmas, critical_edges, extract_imc, it_from_imc,
    no_it_certificate, run_algorithm, seed_from_critical_edge, FeasiblePair, ImcRecord,
};
use partial_transversals::solver::{max_partial_it, verify_certificate};
use proptest::prelude::*;

/// Extracts an IMC at the defect forced by the maximum partial IT, or `None`
/// when the graph has a full IT or an empty class.
fn extract(g: &MultipartiteGraph) -> Option<ImcRecord> {
    if (0..g.num_classes()).any(|c| g.class_size(c) == 0) {
        return None;
    }
    let best = max_partial_it(g);
    if best.size == g.num_classes() {
        return None;
    }
    let d = g.num_classes() - best.size - 1;
    let seed = FeasiblePair::seed(g, Default::default(), best.witness);
    Some(extract_imc(g, d, &seed, &mut Budget::unlimited()).expect("preconditions hold"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn algorithm_output_is_feasible_and_dominating(g in arb_graph(2..=5, 1..=3)) {
        let seed = FeasiblePair::seed(&g, Default::default(), max_partial_it(&g).witness);
        let mut b = Budget::unlimited();
        let run = run_algorithm(&g, &seed, &mut b).unwrap();
        prop_assert_eq!(check_feasible(&g, &run.pair, &mut b).unwrap(), None);
        let target = g.vertices_of_classes(&run.pair.target_classes());
        prop_assert!(g.dominates(&run.pair.i, &target));
        let mut size = seed.i.len();
        let mut i = seed.i.clone();
        for step in &run.steps {
            i = i.union(&step.added);
            prop_assert!(i.len() > size);
            size = i.len();
        }
        prop_assert_eq!(i, run.pair.i);
    }

    #[test]
    fn structure_checks_never_fail(g in arb_graph(2..=5, 1..=4)) {
        if let Some(rec) = extract(&g) {
            let report = check_structure_lemmas(&g, &rec, &mut Budget::unlimited());
            prop_assert_eq!(report.failures().count(), 0, "{}", report);
        }
    }

    #[test]
    fn trees_of_an_imc_give_independent_transversals(g in arb_graph(2..=5, 1..=3)) {
        let Some(rec) = extract(&g) else { return Ok(()) };
        if !rec.is_imc() {
            return Ok(());
        }
        for comp in &rec.forest.components {
            for omit in comp.iter() {
                let t = it_from_imc(&g, &rec.i, comp, omit, None).unwrap();
                prop_assert_eq!(t.len(), comp.len() - 1);
                prop_assert!(t.is_valid_in(&g));
                prop_assert!(t.get(omit).is_none());
                let outside = g
                    .class_vertices(omit)
                    .find(|&u| g.neighbors_in(u, &rec.i).iter().all(|x| !comp.contains(x.part)));
                if let Some(u) = outside {
                    let t = it_from_imc(&g, &rec.i, comp, omit, Some(u)).unwrap();
                    prop_assert_eq!(t.len(), comp.len());
                    prop_assert!(t.is_valid_in(&g));
                }
            }
        }
    }

    #[test]
    fn engine_certificate_is_valid(g in arb_graph(2..=5, 1..=3)) {
        let full = max_partial_it(&g).size == g.num_classes();
        match no_it_certificate(&g, &mut Budget::unlimited()) {
            Ok(cert) => {
                prop_assert!(!full);
                prop_assert_eq!(verify_certificate(&g, &cert), Ok(()));
            }
            Err(_) => prop_assert!(full),
        }
    }

    #[test]
    fn critical_edges_end_up_in_the_imc(g in arb_graph(2..=4, 1..=3)) {
        let best = max_partial_it(&g).size;
        if best == g.num_classes() {
            return Ok(());
        }
        let d = g.num_classes() - best - 1;
        let mut b = Budget::unlimited();
        for e in critical_edges(&g, d, &mut b).unwrap() {
            let seed = seed_from_critical_edge(&g, d, e, &mut b).unwrap();
            let rec = extract_imc(&g, d, &seed, &mut b).unwrap();
            prop_assert!(rec.i.contains(&e.0) && rec.i.contains(&e.1));
        }
    }
}
