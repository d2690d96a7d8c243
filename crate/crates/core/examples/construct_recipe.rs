//! Recipe text to graph, claim and certificate.
//!
//! Run with `cargo run --example construct_recipe`.

use partial_transversals::budget::Budget;
use partial_transversals::constructions::{build, certify_graph, parse_recipe, ClaimStatus};

const RECIPES: &[&str] = &[
    "(kdd 3)",
    "(blocks 5 3)",
    "(blowup 3 2)",
    "; three rows of K_{4,4} joined by a spine\n(kdd 4)\n(rows-spine 3)",
    "(kdd 2) (copies 2)",
    "(kdd 6) (add-kr)",
];

fn main() {
    for text in RECIPES {
        let recipe = parse_recipe(text).expect("recipe parses");
        let (g, claim) = build(&recipe).expect("recipe builds");
        print!("{recipe}");
        println!(
            "  {} classes, {} vertices, {} edges, max degree {}",
            g.num_classes(),
            g.num_vertices(),
            g.num_edges(),
            g.max_degree()
        );
        println!("  claim {claim}");
        match certify_graph(&g, &claim, &mut Budget::default()) {
            Ok(c) => {
                println!("  certified, largest partial IT {}", c.measured_max_it);
                print!("{}", claim.sidecar(ClaimStatus::Certified, Some(c.measured_max_it)));
            }
            Err(e) => println!("  {e}"),
        }
        println!();
    }
}
