//! Exact search for partial independent transversals.
//!
//! A partial independent transversal (partial IT) is an independent set with
//! at most one vertex in each class. The searches here are exhaustive
//! branch-and-bound: the optimum is found with a dynamic "fewest candidates
//! first" order, and the reported witness is then recovered as the
//! lexicographically least optimum.

pub(crate) mod certificate;
pub(crate) mod search;

pub use certificate::{
    no_it_certificate_brute, verify_certificate, CertificateDefect, NoItCertificate,
};

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::budget::{Budget, BudgetExhausted};
use crate::graph::{ClassSet, GraphError, MultipartiteGraph, VertexRef, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has a full independent transversal")]
    HasTransversal,
    #[error("class {0} is empty")]
    EmptyClass(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransversalError {
    #[error("two picks in class {0}")]
    RepeatedClass(usize),
}

/// A set of vertices with at most one vertex per class, keyed by class.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transversal {
    picks: BTreeMap<usize, VertexRef>,
}

impl Transversal {
    pub fn new() -> Self {
        Transversal::default()
    }

    pub fn from_vertices<I: IntoIterator<Item = VertexRef>>(
        vertices: I,
    ) -> Result<Self, TransversalError> {
        let mut t = Transversal::new();
        for v in vertices {
            if t.picks.insert(v.part, v).is_some() {
                return Err(TransversalError::RepeatedClass(v.part));
            }
        }
        Ok(t)
    }

    pub(crate) fn from_ids(g: &MultipartiteGraph, ids: &[usize]) -> Self {
        Transversal::from_vertices(ids.iter().map(|&id| g.vertex(id)))
            .expect("search picks one vertex per class")
    }

    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn get(&self, part: usize) -> Option<VertexRef> {
        self.picks.get(&part).copied()
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        self.get(v.part) == Some(v)
    }

    /// Picks in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.picks.values().copied()
    }

    pub fn support(&self) -> ClassSet {
        self.picks.keys().copied().collect()
    }

    pub fn vertices(&self) -> VertexSet {
        self.iter().collect()
    }

    /// Replaces or inserts the pick of `v`'s class.
    pub fn set(&mut self, v: VertexRef) {
        self.picks.insert(v.part, v);
    }

    pub fn remove_class(&mut self, part: usize) -> Option<VertexRef> {
        self.picks.remove(&part)
    }

    /// Independent in `g` (one-per-class holds by construction).
    pub fn is_valid_in(&self, g: &MultipartiteGraph) -> bool {
        self.iter().all(|v| g.contains(v)) && g.is_independent(&self.vertices())
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.vertices(), f)
    }
}

/// Outcome of [`max_partial_it`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub size: usize,
    pub witness: Transversal,
    /// True iff the full search completed. Searches that run out of budget
    /// return an error instead, so successful results are always exhaustive.
    pub exhaustive: bool,
}

fn all_vertices(g: &MultipartiteGraph) -> FixedBitSet {
    let mut avail = FixedBitSet::with_capacity(g.num_vertices());
    avail.insert_range(..);
    avail
}

/// Maximum partial IT with the lexicographically least optimal witness.
pub fn max_partial_it_with_budget(
    g: &MultipartiteGraph,
    budget: &mut Budget,
) -> Result<SolveResult, BudgetExhausted> {
    let classes: Vec<usize> = (0..g.num_classes()).collect();
    let avail = all_vertices(g);
    let size = search::max_size(g, &classes, &avail, budget)?;
    let ids = search::first_of_size(g, &classes, &avail, size, budget)?
        .expect("an optimum of the computed size exists");
    Ok(SolveResult {
        size,
        witness: Transversal::from_ids(g, &ids),
        exhaustive: true,
    })
}

/// [`max_partial_it_with_budget`] without a node limit.
pub fn max_partial_it(g: &MultipartiteGraph) -> SolveResult {
    max_partial_it_with_budget(g, &mut Budget::unlimited()).expect("unlimited budget")
}

/// A partial IT of exactly `s` vertices (the lexicographically first), or
/// `None` if there is none.
pub fn has_it_of_size(
    g: &MultipartiteGraph,
    s: usize,
    budget: &mut Budget,
) -> Result<Option<Transversal>, BudgetExhausted> {
    if s > g.num_classes() {
        return Ok(None);
    }
    let classes: Vec<usize> = (0..g.num_classes()).collect();
    Ok(search::first_of_size(g, &classes, &all_vertices(g), s, budget)?
        .map(|ids| Transversal::from_ids(g, &ids)))
}

/// A full IT of `G[U]` that uses no vertex of `forbidden`.
///
/// Callers fold any neighborhood constraints into `forbidden` themselves.
pub fn avoidance_it(
    g: &MultipartiteGraph,
    u: &ClassSet,
    forbidden: &VertexSet,
    budget: &mut Budget,
) -> Result<Option<Transversal>, SolveError> {
    g.check_classes(u)?;
    g.check_set(forbidden)?;
    let mut avail = all_vertices(g);
    for v in forbidden {
        avail.set(g.id(v), false);
    }
    let classes = u.to_vec();
    Ok(
        search::first_of_size(g, &classes, &avail, classes.len(), budget)?
            .map(|ids| Transversal::from_ids(g, &ids)),
    )
}

/// True iff `g` has an independent transversal meeting every class.
pub fn has_full_it(g: &MultipartiteGraph, budget: &mut Budget) -> Result<bool, BudgetExhausted> {
    Ok(has_it_of_size(g, g.num_classes(), budget)?.is_some())
}
