//! The six-class defect-two family: three rows of `K_{Δ,Δ}` plus a spine
//! reach class size `⌊5Δ/4⌋` with no 5-IT.
//!
//! Run with `cargo run --release --example corollary_table`.

use partial_transversals::budget::Budget;
use partial_transversals::constructions::{certify, Recipe};

fn main() {
    println!("| delta | class size | floor(5 delta/4) | max degree | largest IT |");
    println!("|---|---|---|---|---|");
    for delta in 1..=10 {
        let recipe = Recipe::kdd(delta).rows_spine(3);
        let c = certify(&recipe, &mut Budget::default()).expect("construction certifies");
        println!(
            "| {delta} | {} | {} | {} | {} |",
            c.claim.n,
            5 * delta / 4,
            c.claim.delta,
            c.measured_max_it
        );
    }
}
