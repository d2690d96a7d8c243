//! Lower and upper bounds on `n(r, D, Δ)` with their sources.
//!
//! Run with `cargo run --example bounds_report`.

use partial_transversals::bounds::{
    decompose, nr_formula, render_csv, render_markdown, summary, summary_grid, upper_genbound,
    Params,
};

fn main() {
    for (r, d, delta) in [(6, 1, 4), (7, 2, 12), (10, 1, 20), (5, 0, 9)] {
        let rep = summary(r, d, delta).unwrap();
        let (q, k) = decompose(r, d).unwrap();
        println!("{rep}   (q={q}, k={k})");
    }

    let p = Params::new(8, 1, 10).unwrap();
    println!(
        "\nr=8, d=1, delta=10: general upper bound {} vs defect-one value n(8,1,10)={}",
        upper_genbound(&p),
        nr_formula(8, 10)
    );

    let grid = summary_grid(5, 2, 6);
    println!("\n{}", render_markdown(&grid));
    print!("{}", render_csv(&grid[..3]));
}
