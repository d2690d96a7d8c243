//! Multipartite graphs with a fixed class partition.
//!
//! Vertices are addressed by [`VertexRef`] (class, position). Internally every
//! vertex also has a global id, assigned class by class, so that the global id
//! order coincides with the lexicographic order of [`VertexRef`]s. Edges inside
//! a class are rejected: transversals take at most one vertex per class, so
//! such edges never matter.

mod mpg;
mod sets;

pub use mpg::{ParseError, ParseErrorKind};
pub use sets::{ClassSet, VertexRef, VertexSet};

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex out of range: {0}")]
    VertexOutOfRange(VertexRef),
    #[error("class out of range: {0}")]
    ClassOutOfRange(usize),
    #[error("intra-class edge {0} - {1}")]
    IntraClassEdge(VertexRef, VertexRef),
    #[error("duplicate edge {0} - {1}")]
    DuplicateEdge(VertexRef, VertexRef),
    #[error("no edge {0} - {1}")]
    MissingEdge(VertexRef, VertexRef),
}

/// Accumulates class sizes and edges, validating as it goes.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    sizes: Vec<usize>,
    edges: BTreeSet<(VertexRef, VertexRef)>,
}

impl GraphBuilder {
    pub fn new(sizes: Vec<usize>) -> Self {
        GraphBuilder {
            sizes,
            edges: BTreeSet::new(),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn class_size(&self, part: usize) -> usize {
        self.sizes[part]
    }

    /// Appends a new class and returns its index.
    pub fn add_class(&mut self, size: usize) -> usize {
        self.sizes.push(size);
        self.sizes.len() - 1
    }

    /// Grows class `part` by `extra` vertices and returns the index of the
    /// first new vertex.
    pub fn grow_class(&mut self, part: usize, extra: usize) -> usize {
        let first = self.sizes[part];
        self.sizes[part] += extra;
        first
    }

    fn check(&self, v: VertexRef) -> Result<(), GraphError> {
        if v.part >= self.sizes.len() || v.index >= self.sizes[v.part] {
            Err(GraphError::VertexOutOfRange(v))
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, a: VertexRef, b: VertexRef) -> Result<(), GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a.part == b.part {
            return Err(GraphError::IntraClassEdge(a, b));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, a: VertexRef, b: VertexRef) -> Result<(), GraphError> {
        let key = if a < b { (a, b) } else { (b, a) };
        if !self.edges.remove(&key) {
            return Err(GraphError::MissingEdge(key.0, key.1));
        }
        Ok(())
    }

    pub fn has_edge(&self, a: VertexRef, b: VertexRef) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&key)
    }

    pub fn build(self) -> MultipartiteGraph {
        MultipartiteGraph::from_parts(self.sizes, self.edges)
    }
}

/// An r-partite graph, immutable once built.
#[derive(Clone)]
pub struct MultipartiteGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    part_of: Vec<usize>,
    adjacency: Vec<FixedBitSet>,
    class_masks: Vec<FixedBitSet>,
    edges: Vec<(VertexRef, VertexRef)>,
}

impl PartialEq for MultipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.sizes == other.sizes && self.edges == other.edges
    }
}

impl Eq for MultipartiteGraph {}

impl std::fmt::Debug for MultipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultipartiteGraph")
            .field("sizes", &self.sizes)
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl MultipartiteGraph {
    fn from_parts(sizes: Vec<usize>, edges: BTreeSet<(VertexRef, VertexRef)>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut total = 0;
        for &s in &sizes {
            offsets.push(total);
            total += s;
        }
        offsets.push(total);
        let mut part_of = Vec::with_capacity(total);
        for (p, &s) in sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, s));
        }
        let mut adjacency = vec![FixedBitSet::with_capacity(total); total];
        let class_masks = (0..sizes.len())
            .map(|p| {
                let mut m = FixedBitSet::with_capacity(total);
                m.insert_range(offsets[p]..offsets[p + 1]);
                m
            })
            .collect();
        for &(a, b) in &edges {
            let (ia, ib) = (offsets[a.part] + a.index, offsets[b.part] + b.index);
            adjacency[ia].insert(ib);
            adjacency[ib].insert(ia);
        }
        MultipartiteGraph {
            sizes,
            offsets,
            part_of,
            adjacency,
            class_masks,
            edges: edges.into_iter().collect(),
        }
    }

    /// Graph with the given class sizes and no edges.
    pub fn edgeless(sizes: Vec<usize>) -> Self {
        GraphBuilder::new(sizes).build()
    }

    /// Builds a graph from an edge list; any invalid edge is an error.
    pub fn from_edges(
        sizes: Vec<usize>,
        edges: impl IntoIterator<Item = (VertexRef, VertexRef)>,
    ) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(sizes);
        for (x, y) in edges {
            b.add_edge(x, y)?;
        }
        Ok(b.build())
    }

    /// A builder pre-loaded with this graph's classes and edges.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            sizes: self.sizes.clone(),
            edges: self.edges.iter().copied().collect(),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn class_size(&self, part: usize) -> usize {
        self.sizes[part]
    }

    pub fn min_class_size(&self) -> usize {
        self.sizes.iter().copied().min().unwrap_or(0)
    }

    pub fn num_vertices(&self) -> usize {
        self.part_of.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: lexicographic on `(part1, index1, part2, index2)`
    /// with `part1 < part2`.
    pub fn edges(&self) -> &[(VertexRef, VertexRef)] {
        &self.edges
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        v.part < self.sizes.len() && v.index < self.sizes[v.part]
    }

    pub fn check_vertex(&self, v: VertexRef) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        s.iter().try_for_each(|v| self.check_vertex(v))
    }

    pub fn check_classes(&self, y: &ClassSet) -> Result<(), GraphError> {
        match y.iter().find(|&c| c >= self.sizes.len()) {
            Some(c) => Err(GraphError::ClassOutOfRange(c)),
            None => Ok(()),
        }
    }

    /// Global id of a vertex. Panics on an invalid vertex.
    pub fn id(&self, v: VertexRef) -> usize {
        assert!(self.contains(v), "vertex out of range: {v}");
        self.offsets[v.part] + v.index
    }

    pub fn vertex(&self, id: usize) -> VertexRef {
        let part = self.part_of[id];
        VertexRef::new(part, id - self.offsets[part])
    }

    pub fn part_of_id(&self, id: usize) -> usize {
        self.part_of[id]
    }

    pub fn class_range(&self, part: usize) -> std::ops::Range<usize> {
        self.offsets[part]..self.offsets[part + 1]
    }

    /// Bitset of global ids in class `part`.
    pub fn class_mask(&self, part: usize) -> &FixedBitSet {
        &self.class_masks[part]
    }

    /// Bitset of global ids adjacent to global id `id`.
    pub fn neighbor_mask(&self, id: usize) -> &FixedBitSet {
        &self.adjacency[id]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.num_vertices()).map(move |id| self.vertex(id))
    }

    pub fn class_vertices(&self, part: usize) -> impl Iterator<Item = VertexRef> {
        (0..self.sizes[part]).map(move |i| VertexRef::new(part, i))
    }

    pub fn is_adjacent(&self, a: VertexRef, b: VertexRef) -> bool {
        self.adjacency[self.id(a)].contains(self.id(b))
    }

    pub fn neighbors(&self, v: VertexRef) -> impl Iterator<Item = VertexRef> + '_ {
        self.adjacency[self.id(v)].ones().map(move |id| self.vertex(id))
    }

    pub fn degree(&self, v: VertexRef) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adjacency[self.id(v)].count_ones(..))
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency
            .iter()
            .map(|a| a.count_ones(..))
            .max()
            .unwrap_or(0)
    }

    /// Neighbors of `v` inside `s`.
    pub fn neighbors_in(&self, v: VertexRef, s: &VertexSet) -> VertexSet {
        s.iter().filter(|&u| self.is_adjacent(v, u)).collect()
    }

    /// All vertices adjacent to at least one member of `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut mask = FixedBitSet::with_capacity(self.num_vertices());
        for v in s {
            mask.union_with(&self.adjacency[self.id(v)]);
        }
        mask.ones().map(|id| self.vertex(id)).collect()
    }

    /// Classes met by `s`.
    pub fn class_support(&self, s: &VertexSet) -> ClassSet {
        s.iter().map(|v| v.part).collect()
    }

    /// Union of the classes in `y`, as a vertex set.
    pub fn vertices_of_classes(&self, y: &ClassSet) -> VertexSet {
        y.iter().flat_map(|c| self.class_vertices(c)).collect()
    }

    /// The subgraph induced on the classes of `y`; class order is preserved
    /// ascending and classes are renumbered `0..|y|`.
    pub fn induced_on_classes(&self, y: &ClassSet) -> MultipartiteGraph {
        let kept = y.to_vec();
        let mut new_index = vec![usize::MAX; self.num_classes()];
        for (k, &c) in kept.iter().enumerate() {
            new_index[c] = k;
        }
        let sizes = kept.iter().map(|&c| self.sizes[c]).collect();
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| y.contains(a.part) && y.contains(b.part))
            .map(|&(a, b)| {
                (
                    VertexRef::new(new_index[a.part], a.index),
                    VertexRef::new(new_index[b.part], b.index),
                )
            })
            .collect();
        MultipartiteGraph::from_parts(sizes, edges)
    }

    /// True iff no edge joins two members of `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let ids: Vec<usize> = s.iter().map(|v| self.id(v)).collect();
        ids.iter()
            .enumerate()
            .all(|(k, &a)| ids[k + 1..].iter().all(|&b| !self.adjacency[a].contains(b)))
    }

    /// True iff every vertex of `target \ s` has a neighbor in `s`.
    pub fn dominates(&self, s: &VertexSet, target: &VertexSet) -> bool {
        let mut covered = FixedBitSet::with_capacity(self.num_vertices());
        for v in s {
            let id = self.id(v);
            covered.union_with(&self.adjacency[id]);
            covered.insert(id);
        }
        target.iter().all(|v| covered.contains(self.id(v)))
    }

    /// Vertices of `target` that are neither in `s` nor adjacent to `s`.
    pub fn undominated(&self, s: &VertexSet, target: &VertexSet) -> VertexSet {
        let mut covered = FixedBitSet::with_capacity(self.num_vertices());
        for v in s {
            let id = self.id(v);
            covered.union_with(&self.adjacency[id]);
            covered.insert(id);
        }
        target
            .iter()
            .filter(|&v| !covered.contains(self.id(v)))
            .collect()
    }

    /// Edges with both endpoints in `s`, canonical order.
    pub fn induced_edges(&self, s: &VertexSet) -> Vec<(VertexRef, VertexRef)> {
        let members = s.to_vec();
        let mut out = Vec::new();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                if self.is_adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn without_edge(&self, a: VertexRef, b: VertexRef) -> Result<MultipartiteGraph, GraphError> {
        let mut builder = self.to_builder();
        builder.remove_edge(a, b)?;
        Ok(builder.build())
    }

    /// Serializes to the canonical MPG text format.
    pub fn to_mpg(&self) -> String {
        mpg::serialize(self)
    }

    /// Parses the MPG text format.
    pub fn from_mpg(text: &str) -> Result<MultipartiteGraph, ParseError> {
        mpg::parse(text)
    }
}

/// Complete bipartite graph `K_{a,b}` as a 2-partite graph.
pub fn complete_bipartite(a: usize, b: usize) -> MultipartiteGraph {
    complete_multipartite(&[a, b])
}

/// Complete multipartite graph with the given class sizes.
pub fn complete_multipartite(sizes: &[usize]) -> MultipartiteGraph {
    let mut builder = GraphBuilder::new(sizes.to_vec());
    for p in 0..sizes.len() {
        for q in p + 1..sizes.len() {
            for i in 0..sizes[p] {
                for j in 0..sizes[q] {
                    builder
                        .add_edge(VertexRef::new(p, i), VertexRef::new(q, j))
                        .expect("fresh edge");
                }
            }
        }
    }
    builder.build()
}

/// Disjoint union; the classes of `b` follow those of `a`.
pub fn disjoint_union(a: &MultipartiteGraph, b: &MultipartiteGraph) -> MultipartiteGraph {
    let shift = a.num_classes();
    let mut sizes = a.class_sizes().to_vec();
    sizes.extend_from_slice(b.class_sizes());
    let mut builder = GraphBuilder::new(sizes);
    for &(x, y) in a.edges() {
        builder.add_edge(x, y).expect("fresh edge");
    }
    for &(x, y) in b.edges() {
        builder
            .add_edge(
                VertexRef::new(x.part + shift, x.index),
                VertexRef::new(y.part + shift, y.index),
            )
            .expect("fresh edge");
    }
    builder.build()
}
