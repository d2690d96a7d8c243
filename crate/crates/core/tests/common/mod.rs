//! Generators and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use partial_transversals::graph::{MultipartiteGraph, VertexRef};
use proptest::prelude::*;
use rand::Rng;

/// All cross-class vertex pairs of a graph with the given class sizes, in
/// canonical order.
pub fn cross_pairs(sizes: &[usize]) -> Vec<(VertexRef, VertexRef)> {
    let verts: Vec<VertexRef> = sizes
        .iter()
        .enumerate()
        .flat_map(|(p, &s)| (0..s).map(move |i| VertexRef::new(p, i)))
        .collect();
    let mut out = vec![];
    for (k, &a) in verts.iter().enumerate() {
        for &b in &verts[k + 1..] {
            if a.part != b.part {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn from_mask(sizes: Vec<usize>, mask: &[bool]) -> MultipartiteGraph {
    let pairs = cross_pairs(&sizes);
    let edges = pairs
        .into_iter()
        .zip(mask)
        .filter(|(_, &keep)| keep)
        .map(|(e, _)| e);
    MultipartiteGraph::from_edges(sizes, edges).expect("cross pairs are valid edges")
}

/// Graphs with `classes` classes of sizes in `sizes`, each cross pair present
/// independently.
pub fn arb_graph(
    classes: std::ops::RangeInclusive<usize>,
    sizes: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = MultipartiteGraph> {
    (classes, Just(sizes))
        .prop_flat_map(|(r, sizes)| prop::collection::vec(sizes, r))
        .prop_flat_map(|sizes| {
            let m = cross_pairs(&sizes).len();
            (Just(sizes), prop::collection::vec(any::<bool>(), m))
        })
        .prop_map(|(sizes, mask)| from_mask(sizes, &mask))
}

/// A random graph with each cross pair present with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, sizes: Vec<usize>, p: f64) -> MultipartiteGraph {
    let m = cross_pairs(&sizes).len();
    let mask: Vec<bool> = (0..m).map(|_| rng.gen_bool(p)).collect();
    from_mask(sizes, &mask)
}

/// Largest partial IT by enumerating every vertex subset. Only for graphs
/// with at most about 16 vertices.
pub fn naive_max_partial_it(g: &MultipartiteGraph) -> usize {
    let verts: Vec<VertexRef> = g.vertices().collect();
    let n = verts.len();
    assert!(n <= 20, "oracle is exponential in the vertex count");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let picked: Vec<VertexRef> = (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| verts[k]).collect();
        let one_per_class = picked.windows(2).all(|w| w[0].part != w[1].part);
        let independent = picked
            .iter()
            .enumerate()
            .all(|(k, &a)| picked[k + 1..].iter().all(|&b| !g.is_adjacent(a, b)));
        if one_per_class && independent {
            best = size;
        }
    }
    best
}

/// Largest partial IT by a pick-or-skip search over the classes, pruning
/// branches that cannot beat the best found so far. Shares no code with the
/// library solver.
pub fn enumerate_max_it(g: &MultipartiteGraph) -> usize {
    fn go(
        g: &MultipartiteGraph,
        class: usize,
        picked: &mut Vec<VertexRef>,
        best: &mut usize,
    ) {
        let r = g.num_classes();
        if picked.len() + (r - class) <= *best {
            return;
        }
        if class == r {
            *best = picked.len();
            return;
        }
        for i in 0..g.class_size(class) {
            let v = VertexRef::new(class, i);
            if picked.iter().all(|&u| !g.is_adjacent(u, v)) {
                picked.push(v);
                go(g, class + 1, picked, best);
                picked.pop();
            }
        }
        go(g, class + 1, picked, best);
    }
    let mut best = 0;
    go(g, 0, &mut vec![], &mut best);
    best
}

/// A random graph on the given classes with maximum degree at most
/// `max_degree`: cross pairs are visited in random order and added while
/// both endpoints have room, stopping after `target` edges.
pub fn random_bounded_degree<R: Rng>(
    rng: &mut R,
    sizes: Vec<usize>,
    max_degree: usize,
    target: usize,
) -> MultipartiteGraph {
    use rand::seq::SliceRandom;
    let mut pairs = cross_pairs(&sizes);
    pairs.shuffle(rng);
    let mut b = partial_transversals::graph::GraphBuilder::new(sizes.clone());
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut degree = vec![0; sizes.iter().sum()];
    let id = |v: VertexRef| offsets[v.part] + v.index;
    let mut added = 0;
    for (a, c) in pairs {
        if added == target {
            break;
        }
        if degree[id(a)] < max_degree && degree[id(c)] < max_degree {
            b.add_edge(a, c).expect("cross pair");
            degree[id(a)] += 1;
            degree[id(c)] += 1;
            added += 1;
        }
    }
    b.build()
}

/// Number of full ITs, by direct enumeration.
pub fn count_full_its(g: &MultipartiteGraph) -> usize {
    fn go(g: &MultipartiteGraph, class: usize, picked: &mut Vec<VertexRef>) -> usize {
        if class == g.num_classes() {
            return 1;
        }
        let mut total = 0;
        for i in 0..g.class_size(class) {
            let v = VertexRef::new(class, i);
            if picked.iter().all(|&u| !g.is_adjacent(u, v)) {
                picked.push(v);
                total += go(g, class + 1, picked);
                picked.pop();
            }
        }
        total
    }
    go(g, 0, &mut vec![])
}

/// Local search for an `r`-partite graph with classes of size `n`, maximum
/// degree at most `max_degree` and no full IT. Each move deletes a random
/// edge with probability one half and then tries a few random insertions; a
/// move is kept when it does not increase the number of full ITs, or
/// occasionally at random.
pub fn search_it_free<R: Rng>(
    rng: &mut R,
    r: usize,
    n: usize,
    max_degree: usize,
    moves: usize,
) -> Option<MultipartiteGraph> {
    let mut g = random_bounded_degree(rng, vec![n; r], max_degree, usize::MAX);
    let mut cost = count_full_its(&g);
    for _ in 0..moves {
        if cost == 0 {
            return Some(g);
        }
        let mut b = g.to_builder();
        let edges = g.edges();
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let (a, c) = edges[rng.gen_range(0..edges.len())];
            b.remove_edge(a, c).expect("edge exists");
        }
        for _ in 0..3 {
            let a = VertexRef::new(rng.gen_range(0..r), rng.gen_range(0..n));
            let c = VertexRef::new(rng.gen_range(0..r), rng.gen_range(0..n));
            if a.part == c.part || b.has_edge(a, c) {
                continue;
            }
            let current = b.clone().build();
            if current.degree(a).unwrap() < max_degree && current.degree(c).unwrap() < max_degree {
                b.add_edge(a, c).expect("cross pair");
            }
        }
        let cand = b.build();
        let c = count_full_its(&cand);
        if c <= cost || rng.gen_bool(0.02) {
            g = cand;
            cost = c;
        }
    }
    (cost == 0).then_some(g)
}
