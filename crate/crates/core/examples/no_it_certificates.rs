//! Two routes to a certificate that a graph has no independent transversal,
//! both checked by the same verifier.
//!
//! Run with `cargo run --example no_it_certificates`.

use partial_transversals::budget::Budget;
use partial_transversals::constructions::{build, Recipe};
use partial_transversals::graph::{complete_bipartite, disjoint_union, MultipartiteGraph};
use partial_transversals::imc::no_it_certificate;
use partial_transversals::solver::{no_it_certificate_brute, verify_certificate};

fn main() {
    let graphs: Vec<(&str, MultipartiteGraph)> = vec![
        ("K_{3,3}", complete_bipartite(3, 3)),
        ("K_{2,2} plus an isolated class", disjoint_union(&complete_bipartite(2, 2), &MultipartiteGraph::edgeless(vec![2]))),
        ("complete 3-partite, classes of 2", build(&Recipe::Blowup { m: 3, s: 2 }).unwrap().0),
        ("edgeless", MultipartiteGraph::edgeless(vec![1, 1])),
    ];
    for (name, g) in &graphs {
        println!("== {name}");
        let mut budget = Budget::default();
        match no_it_certificate(g, &mut budget) {
            Ok(cert) => print!("augmentation route:\n{}", cert.render(g)),
            Err(e) => println!("augmentation route: {e}"),
        }
        match no_it_certificate_brute(g, &mut budget) {
            Ok(Some(cert)) => {
                print!("edge-subset route:\n{cert}");
                println!("verifier: {:?}", verify_certificate(g, &cert));
            }
            Ok(None) => println!("edge-subset route: no certificate"),
            Err(e) => println!("edge-subset route: {e}"),
        }
        println!();
    }
}
