//! Reading and writing the MPG text format.
//!
//! Run with `cargo run --example mpg_format`.

use partial_transversals::graph::{complete_bipartite, MultipartiteGraph};

fn main() {
    let g = complete_bipartite(2, 3);
    let text = g.to_mpg();
    print!("{text}");
    let back = MultipartiteGraph::from_mpg(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.to_mpg(), text);
    println!("round trip: identical");

    match MultipartiteGraph::from_mpg("mpg 1\nclasses 2\n") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("malformed input: {e} [{}]", e.kind.code()),
    }
}
