//! Exact partial-IT search on a hand-built graph.
//!
//! Run with `cargo run --example solve_instance`.

use partial_transversals::budget::Budget;
use partial_transversals::graph::{ClassSet, GraphBuilder, VertexRef, VertexSet};
use partial_transversals::solver::{avoidance_it, has_it_of_size, max_partial_it};

fn main() {
    // Three classes of two vertices. Class 0 is complete to class 1, and
    // class 2 hangs off the first vertex of each.
    let mut b = GraphBuilder::new(vec![2, 2, 2]);
    let v = VertexRef::new;
    for x in 0..2 {
        for y in 0..2 {
            b.add_edge(v(0, x), v(1, y)).unwrap();
        }
    }
    b.add_edge(v(2, 0), v(0, 0)).unwrap();
    b.add_edge(v(2, 1), v(1, 0)).unwrap();
    let g = b.build();
    println!("{}", g.to_mpg());

    let best = max_partial_it(&g);
    println!("largest partial IT: {} vertices, witness {}", best.size, best.witness);

    let mut budget = Budget::new(10_000);
    for s in 1..=3 {
        match has_it_of_size(&g, s, &mut budget).unwrap() {
            Some(t) => println!("{s}-IT: {t}"),
            None => println!("{s}-IT: none"),
        }
    }

    let classes: ClassSet = [0, 2].into_iter().collect();
    let forbidden: VertexSet = [v(0, 1)].into_iter().collect();
    let t = avoidance_it(&g, &classes, &forbidden, &mut budget).unwrap();
    println!(
        "IT of classes {classes} avoiding {forbidden}: {}",
        t.map_or("none".to_string(), |t| t.to_string())
    );
    println!("search nodes used: {}", budget.used());
}
