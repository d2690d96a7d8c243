use std::fmt;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::{class_edges, first_cycle, ImcError};
use crate::budget::{Budget, BudgetExhausted};
use crate::graph::{ClassSet, MultipartiteGraph, VertexRef, VertexSet};
use crate::solver::search::CostEnumerator;
use crate::solver::{max_partial_it_with_budget, Transversal};

/// The state `(I, T)` of the augmentation procedure, together with the class
/// set `R` of classes missed by the seed transversal. `R` never changes once
/// seeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasiblePair {
    pub i: VertexSet,
    pub t: Transversal,
    pub r_classes: ClassSet,
}

impl FeasiblePair {
    pub fn new(i: VertexSet, t: Transversal, r_classes: ClassSet) -> Self {
        FeasiblePair { i, t, r_classes }
    }

    /// A seed pair, with `R` set to the classes that `t` misses.
    pub fn seed(g: &MultipartiteGraph, i: VertexSet, t: Transversal) -> Self {
        let r_classes = ClassSet::all(g.num_classes()).difference(&t.support());
        FeasiblePair { i, t, r_classes }
    }

    /// `W = I \ T`, the star centers.
    pub fn centers(&self) -> VertexSet {
        self.i.iter().filter(|&v| !self.t.contains(v)).collect()
    }

    /// `S(I)`.
    pub fn active_classes(&self) -> ClassSet {
        self.i.iter().map(|v| v.part).collect()
    }

    /// `S(I) ∪ R`, the classes the finished pair must dominate.
    pub fn target_classes(&self) -> ClassSet {
        self.active_classes().union(&self.r_classes)
    }
}

/// The first pair condition that fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("(a) T is not independent: {0} and {1} are adjacent")]
    TNotIndependent(VertexRef, VertexRef),
    #[error("(a) T has {size} vertices but a partial IT of size {max} exists")]
    TNotMaximum { size: usize, max: usize },
    #[error("(b) class {} meets I but its T-vertex {vertex} is not in I", vertex.part)]
    SupportMismatch { vertex: VertexRef },
    #[error("(c) {0}")]
    NotStarForest(String),
    #[error("(d) classes {0} and {1} close a cycle in the class multigraph of I")]
    ClassCycle(usize, usize),
    #[error("(e) center {center} sees {current} vertices of T but only {better} of {witness}")]
    Improvable {
        center: VertexRef,
        current: usize,
        better: usize,
        witness: Transversal,
    },
}

impl Violation {
    /// The condition letter, `'a'` to `'e'`.
    pub fn condition(&self) -> char {
        match self {
            Violation::TNotIndependent(..) | Violation::TNotMaximum { .. } => 'a',
            Violation::SupportMismatch { .. } => 'b',
            Violation::NotStarForest(_) => 'c',
            Violation::ClassCycle(..) => 'd',
            Violation::Improvable { .. } => 'e',
        }
    }
}

/// Checks conditions (a) through (e) in order and returns the first failure,
/// or `None` if the pair is feasible.
///
/// Condition (e) quantifies over all partial ITs on `S(T)`; it is decided by
/// a backtracking search per center, drawing on `budget`.
pub fn check_feasible(
    g: &MultipartiteGraph,
    pair: &FeasiblePair,
    budget: &mut Budget,
) -> Result<Option<Violation>, ImcError> {
    g.check_set(&pair.i)?;
    g.check_set(&pair.t.vertices())?;
    g.check_classes(&pair.r_classes)?;
    let max = max_partial_it_with_budget(g, budget)?.size;
    Ok(check_with_max(g, pair, max, budget)?)
}

pub(crate) fn check_with_max(
    g: &MultipartiteGraph,
    pair: &FeasiblePair,
    max: usize,
    budget: &mut Budget,
) -> Result<Option<Violation>, BudgetExhausted> {
    let t = pair.t.vertices();
    if let Some(&(a, b)) = g.induced_edges(&t).first() {
        return Ok(Some(Violation::TNotIndependent(a, b)));
    }
    if t.len() != max {
        return Ok(Some(Violation::TNotMaximum { size: t.len(), max }));
    }
    let active = pair.active_classes();
    if let Some(vertex) = pair.t.iter().find(|v| active.contains(v.part) && !pair.i.contains(v)) {
        return Ok(Some(Violation::SupportMismatch { vertex }));
    }
    let w = pair.centers();
    if let Some(msg) = star_forest_defect(g, &pair.i, &w) {
        return Ok(Some(Violation::NotStarForest(msg)));
    }
    if let Some((a, b)) = first_cycle(g.num_classes(), &class_edges(g, &pair.i)) {
        return Ok(Some(Violation::ClassCycle(a, b)));
    }
    for v in &w {
        let others: VertexSet = w.iter().filter(|&u| u != v).collect();
        let allowed = constrained_mask(g, &pair.t, &others, &w);
        let current = g.neighbors_in(v, &t).len();
        let mut found = None;
        enumerate(g, &pair.t, v, &allowed, current, budget, |ids, cost, _| {
            found = Some((Transversal::from_ids(g, ids), cost));
            ControlFlow::Break(())
        })?;
        if let Some((witness, better)) = found {
            return Ok(Some(Violation::Improvable {
                center: v,
                current,
                better,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Describes why `G[I]` is not a forest of stars with centers in `W` and at
/// least one leaf each.
fn star_forest_defect(g: &MultipartiteGraph, i: &VertexSet, w: &VertexSet) -> Option<String> {
    let mut seen = VertexSet::new();
    for start in i {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut k = 0;
        while k < comp.len() {
            for u in g.neighbors_in(comp[k], i).iter() {
                if seen.insert(u) {
                    comp.push(u);
                }
            }
            k += 1;
        }
        let comp: VertexSet = comp.into_iter().collect();
        if comp.len() == 1 {
            return Some(format!("{start} is isolated in G[I]"));
        }
        let edges = g.induced_edges(&comp).len();
        let center = comp
            .iter()
            .find(|&c| g.neighbors_in(c, &comp).len() + 1 == comp.len());
        match center {
            Some(_) if edges + 1 != comp.len() => {
                return Some(format!("the component of {start} in G[I] is not a star"))
            }
            None => return Some(format!("the component of {start} in G[I] is not a star")),
            Some(_) => {}
        }
        let centered = if comp.len() == 2 {
            comp.iter().any(|c| w.contains(&c))
        } else {
            center.is_some_and(|c| w.contains(&c))
        };
        if !centered {
            return Some(format!("the star of {start} in G[I] has no center in W"));
        }
    }
    None
}

/// Vertices admissible for a transversal `T'` on `S(T)` that avoids `forbid`
/// and satisfies `N(w, T') = N(w, T)` for every `w` in `keep`.
///
/// The neighborhood constraint is local to each class: if some `w ∈ keep`
/// sees `T`'s vertex in a class, `T'` must reuse that vertex; otherwise
/// `T'` must avoid every neighbor of `keep` in that class.
fn constrained_mask(
    g: &MultipartiteGraph,
    t: &Transversal,
    keep: &VertexSet,
    forbid: &VertexSet,
) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(g.num_vertices());
    mask.insert_range(..);
    for v in forbid {
        mask.set(g.id(v), false);
    }
    for w in keep {
        mask.difference_with(g.neighbor_mask(g.id(w)));
    }
    for tc in t.iter() {
        if keep.iter().any(|w| g.is_adjacent(w, tc)) {
            mask.difference_with(g.class_mask(tc.part));
            mask.insert(g.id(tc));
        }
    }
    mask
}

/// Runs the cost enumerator over transversals on `S(T)` drawn from
/// `allowed`, with cost equal to the number of neighbors of `v`.
fn enumerate<V>(
    g: &MultipartiteGraph,
    t: &Transversal,
    v: VertexRef,
    allowed: &FixedBitSet,
    limit: usize,
    budget: &mut Budget,
    visit: V,
) -> Result<(), BudgetExhausted>
where
    V: FnMut(&[usize], usize, &mut usize) -> ControlFlow<()>,
{
    let classes = t.support().to_vec();
    let row = g.neighbor_mask(g.id(v));
    let search = CostEnumerator {
        g,
        classes: &classes,
        cost: |id: usize| usize::from(row.contains(id)),
    };
    search.run(allowed, limit, budget, visit)
}

/// Which step of the procedure produced an augmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// `w` was an undominated vertex of a class met by `I`.
    ActiveClass,
    /// `w` was an undominated vertex of a class in `R`.
    RClass,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::ActiveClass => "active",
            StepKind::RClass => "r-class",
        })
    }
}

/// One augmentation: `I` gains `w` and its neighbors in the new `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmStep {
    pub kind: StepKind,
    pub w: VertexRef,
    pub t: Transversal,
    pub added: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmRun {
    pub pair: FeasiblePair,
    pub steps: Vec<AlgorithmStep>,
}

/// Grows `seed` until `I` dominates every vertex in `S(I) ∪ R`.
///
/// Each round picks the least undominated vertex `w`, first among classes
/// met by `I` and then among the classes of `R`, and the lexicographically
/// first `T'` minimizing `|N(w, T')|` among maximum partial ITs on `S(T)`
/// that avoid `W` and keep `N(v, T') = N(v, T)` for all `v ∈ W`. After every
/// round the full feasibility check is repeated; a failure there is reported
/// as [`ImcError::InvariantViolated`].
pub fn run_algorithm(
    g: &MultipartiteGraph,
    seed: &FeasiblePair,
    budget: &mut Budget,
) -> Result<AlgorithmRun, ImcError> {
    g.check_set(&seed.i)?;
    g.check_set(&seed.t.vertices())?;
    g.check_classes(&seed.r_classes)?;
    let max = max_partial_it_with_budget(g, budget)?.size;
    run_with_max(g, seed, max, budget)
}

pub(crate) fn run_with_max(
    g: &MultipartiteGraph,
    seed: &FeasiblePair,
    max: usize,
    budget: &mut Budget,
) -> Result<AlgorithmRun, ImcError> {
    if let Some(v) = check_with_max(g, seed, max, budget)? {
        return Err(ImcError::InfeasibleSeed(v));
    }
    let mut pair = seed.clone();
    let mut steps = vec![];
    loop {
        let active = g.vertices_of_classes(&pair.active_classes());
        let (kind, w) = match g.undominated(&pair.i, &active).first() {
            Some(w) => (StepKind::ActiveClass, w),
            None => {
                let rest = g.vertices_of_classes(&pair.r_classes);
                match g.undominated(&pair.i, &rest).first() {
                    Some(w) => (StepKind::RClass, w),
                    None => break,
                }
            }
        };
        let w_set = pair.centers();
        let allowed = constrained_mask(g, &pair.t, &w_set, &w_set);
        let mut best: Option<Vec<usize>> = None;
        enumerate(g, &pair.t, w, &allowed, pair.t.len() + 1, budget, |ids, cost, limit| {
            best = Some(ids.to_vec());
            *limit = cost;
            if cost == 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        let ids = best.ok_or_else(|| {
            ImcError::InvariantViolated(format!(
                "step {}: no admissible transversal, although T itself qualifies",
                steps.len() + 1
            ))
        })?;
        let t_new = Transversal::from_ids(g, &ids);
        let mut added = g.neighbors_in(w, &t_new.vertices());
        added.insert(w);
        let before = pair.i.len();
        pair.i = pair.i.union(&added);
        pair.t = t_new.clone();
        if pair.i.len() <= before {
            return Err(ImcError::InvariantViolated(format!(
                "step {}: I did not grow",
                steps.len() + 1
            )));
        }
        if let Some(v) = check_with_max(g, &pair, max, budget)? {
            return Err(ImcError::InvariantViolated(format!(
                "step {}: pair is no longer feasible: {v}",
                steps.len() + 1
            )));
        }
        steps.push(AlgorithmStep {
            kind,
            w,
            t: t_new,
            added,
        });
    }
    Ok(AlgorithmRun { pair, steps })
}
