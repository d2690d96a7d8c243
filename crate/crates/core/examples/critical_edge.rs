//! Edge-critical seeding: an edge whose removal creates an `(r - d)`-IT ends
//! up inside the extracted configuration.
//!
//! Run with `cargo run --example critical_edge`.

use partial_transversals::budget::Budget;
use partial_transversals::constructions::{build, Recipe};
use partial_transversals::imc::{critical_edges, extract_imc, seed_from_critical_edge};

fn main() {
    let (g, claim) = build(&Recipe::kdd(3).copies(2)).unwrap();
    let d = claim.defect - 1;
    let mut budget = Budget::default();
    let critical = critical_edges(&g, d, &mut budget).unwrap();
    println!("{} of {} edges are critical for d = {d}", critical.len(), g.num_edges());
    for &(a, b) in critical.iter().take(3) {
        let seed = seed_from_critical_edge(&g, d, (a, b), &mut budget).unwrap();
        let rec = extract_imc(&g, d, &seed, &mut budget).unwrap();
        println!("edge {a}{b}: seed T = {}, configuration {}", seed.t, rec.i);
    }
}
