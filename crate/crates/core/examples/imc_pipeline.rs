//! Induced matching configurations and the structure checks run on them.
//!
//! Run with `cargo run --example imc_pipeline`.

use partial_transversals::budget::Budget;
use partial_transversals::constructions::{build, Recipe};
use partial_transversals::graph::MultipartiteGraph;
use partial_transversals::imc::{
    build_h, check_structure_lemmas, extract_imc, setup_level, FeasiblePair,
};
use partial_transversals::solver::max_partial_it;

fn show(name: &str, g: &MultipartiteGraph, d: usize) {
    println!("== {name}, d = {d}, setup {}", setup_level(g, d));
    let best = max_partial_it(g);
    let seed = FeasiblePair::seed(g, Default::default(), best.witness);
    let mut budget = Budget::default();
    let rec = extract_imc(g, d, &seed, &mut budget).expect("instance meets the preconditions");
    print!("{rec}");
    if let Some(h) = build_h(g, &rec) {
        println!(
            "auxiliary graph: {} classes, {} edges",
            h.graph.num_classes(),
            h.graph.num_edges()
        );
    }
    let report = check_structure_lemmas(g, &rec, &mut budget);
    print!("{report}");
    println!("failures: {}\n", report.failures().count());
}

fn main() {
    let k44 = build(&Recipe::kdd(4)).unwrap().0;
    let two_k33 = build(&Recipe::kdd(3).copies(2)).unwrap().0;
    let spine = build(&Recipe::kdd(4).rows_spine(3)).unwrap().0;
    show("K_{4,4}", &k44, 0);
    show("two copies of K_{3,3}", &two_k33, 1);
    show("three rows of K_{4,4} with a spine", &spine, 1);
}
