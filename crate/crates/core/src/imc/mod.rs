//! Feasible pairs and induced matching configurations.
//!
//! An *induced matching configuration* (IMC) is a set `I` of vertices such
//! that `G[I]` is a perfect matching and the class multigraph `𝒢_I`, obtained
//! by contracting each `V_i ∩ I` to a single node, is a forest. IMCs are
//! grown from feasible pairs `(I, T)` by an augmentation procedure that keeps
//! `T` a maximum partial IT while `I` absorbs undominated vertices.
//!
//! The pipeline is:
//!
//! 1. [`FeasiblePair`] and [`check_feasible`] for the pair conditions,
//! 2. [`run_algorithm`], which re-checks feasibility after every step,
//! 3. [`extract_imc`], which checks the structural conclusions and packages
//!    the result as an [`ImcRecord`],
//! 4. [`check_structure_lemmas`], which verifies the structural facts that
//!    hold under the class-size thresholds of [`SetupLevel`].
//!
//! [`no_it_certificate`] runs the `d = 0` case of the pipeline to certify that
//! a graph has no IT, and [`seed_from_critical_edge`] builds a seed whose IMC
//! must contain a prescribed critical edge.

mod critical;
mod feasible;
mod lemmas;
mod record;

pub use critical::{critical_edges, no_it_certificate, seed_from_critical_edge};
pub use feasible::{
    check_feasible, run_algorithm, AlgorithmRun, AlgorithmStep, FeasiblePair, StepKind, Violation,
};
pub use lemmas::{check_structure_lemmas, LemmaEntry, LemmaOutcome, LemmaReport};
pub use record::{
    build_h, compute_av, extract_imc, is_imc, it_from_imc, setup_level, similar, ASets,
    ExtendedForest, HGraph, ImcRecord, ItFromImcError, SetupLevel,
};

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::budget::BudgetExhausted;
use crate::graph::{GraphError, MultipartiteGraph, VertexSet};
use crate::solver::SolveError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImcError {
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("seed is not a feasible pair: {0}")]
    InfeasibleSeed(Violation),
    /// A conclusion that must hold whenever the preconditions do was found
    /// false. This indicates a bug in this crate.
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

impl From<SolveError> for ImcError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget(b) => ImcError::Budget(b),
            SolveError::Graph(g) => ImcError::Graph(g),
            other => ImcError::Precondition(other.to_string()),
        }
    }
}

/// Edges of the class multigraph `𝒢_I`, one per edge of `G[I]`, in the
/// canonical order of [`MultipartiteGraph::induced_edges`]. Each pair is
/// `(smaller class, larger class)`.
pub(crate) fn class_edges(g: &MultipartiteGraph, i: &VertexSet) -> Vec<(usize, usize)> {
    g.induced_edges(i)
        .into_iter()
        .map(|(a, b)| (a.part.min(b.part), a.part.max(b.part)))
        .collect()
}

/// The first class edge that closes a cycle (parallel edges count), or
/// `None` if the class multigraph is a forest.
pub(crate) fn first_cycle(num_classes: usize, edges: &[(usize, usize)]) -> Option<(usize, usize)> {
    let mut uf = UnionFind::<usize>::new(num_classes);
    edges.iter().copied().find(|&(a, b)| !uf.union(a, b))
}
