//! Step-by-step trace of the augmentation procedure that grows a feasible
//! pair `(I, T)` until `I` dominates its target classes.
//!
//! Run with `cargo run --example algorithm_trace`.

use partial_transversals::budget::Budget;
use partial_transversals::constructions::{build, Recipe};
use partial_transversals::imc::{check_feasible, run_algorithm, FeasiblePair};
use partial_transversals::solver::max_partial_it;

fn main() {
    let (g, claim) = build(&Recipe::kdd(4).rows_spine(3)).unwrap();
    println!("graph with claim {claim}");
    let t = max_partial_it(&g).witness;
    let seed = FeasiblePair::seed(&g, Default::default(), t);
    println!("seed T = {}, R = {}", seed.t, seed.r_classes);

    let mut budget = Budget::default();
    let run = run_algorithm(&g, &seed, &mut budget).unwrap();
    for (k, step) in run.steps.iter().enumerate() {
        println!(
            "step {k}: {} vertex {} -> T' = {}, added {}",
            step.kind, step.w, step.t, step.added
        );
    }
    println!("final I = {}", run.pair.i);
    println!("final T = {}", run.pair.t);
    println!("centers W = {}", run.pair.centers());
    let verdict = check_feasible(&g, &run.pair, &mut budget).unwrap();
    println!(
        "feasible: {}",
        verdict.map_or("yes".to_string(), |v| format!("no ({v})"))
    );
    println!("search nodes used: {}", budget.used());
}
