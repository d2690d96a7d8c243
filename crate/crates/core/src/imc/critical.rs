use super::feasible::{check_with_max, run_with_max, FeasiblePair};
use super::ImcError;
use crate::budget::Budget;
use crate::graph::{ClassSet, MultipartiteGraph, VertexRef, VertexSet};
use crate::solver::certificate::require_nonempty_classes;
use crate::solver::{
    has_it_of_size, max_partial_it_with_budget, verify_certificate, NoItCertificate, SolveError,
    Transversal,
};

/// Seeds the augmentation procedure so that the resulting `I` contains the
/// edge `e = (v1, v2)`.
///
/// Requires that `g` has no `(r − d)`-IT while `g − e` has one; the
/// lexicographically first such `T'` necessarily contains both endpoints.
/// The seed is `I₀ = {v1, v2}` with `T₀ = T' \ {v1}`.
pub fn seed_from_critical_edge(
    g: &MultipartiteGraph,
    d: usize,
    e: (VertexRef, VertexRef),
    budget: &mut Budget,
) -> Result<FeasiblePair, ImcError> {
    let (v1, v2) = e;
    g.check_vertex(v1)?;
    g.check_vertex(v2)?;
    if !g.is_adjacent(v1, v2) {
        return Err(ImcError::Precondition(format!("{v1} {v2} is not an edge")));
    }
    let r = g.num_classes();
    if d >= r {
        return Err(ImcError::Precondition(format!("defect {d} needs more than {r} classes")));
    }
    let target = r - d;
    if has_it_of_size(g, target, budget)?.is_some() {
        return Err(ImcError::Precondition(format!("the graph has a {target}-IT")));
    }
    let without = g.without_edge(v1, v2)?;
    let t_prime = has_it_of_size(&without, target, budget)?.ok_or_else(|| {
        ImcError::Precondition(format!("edge {v1} {v2} is not critical: removing it leaves no {target}-IT"))
    })?;
    if !(t_prime.contains(v1) && t_prime.contains(v2)) {
        return Err(ImcError::InvariantViolated(format!(
            "{target}-IT {t_prime} of G - e misses an endpoint of e"
        )));
    }
    let mut t0 = t_prime;
    t0.remove_class(v1.part);
    let i0: VertexSet = [v1, v2].into_iter().collect();
    let seed = FeasiblePair::seed(g, i0, t0);
    if let Some(v) = check_with_max(g, &seed, target - 1, budget)? {
        return Err(ImcError::InvariantViolated(format!("critical-edge seed is not feasible: {v}")));
    }
    Ok(seed)
}

/// Edges `e` of `g` such that `g` has no `(r − d)`-IT but `g − e` does, in
/// canonical edge order. Empty if `g` itself has an `(r − d)`-IT.
pub fn critical_edges(
    g: &MultipartiteGraph,
    d: usize,
    budget: &mut Budget,
) -> Result<Vec<(VertexRef, VertexRef)>, ImcError> {
    let r = g.num_classes();
    if d >= r {
        return Err(ImcError::Precondition(format!("defect {d} needs more than {r} classes")));
    }
    let target = r - d;
    if has_it_of_size(g, target, budget)?.is_some() {
        return Ok(vec![]);
    }
    let mut out = vec![];
    for &(a, b) in g.edges() {
        let without = g.without_edge(a, b)?;
        if has_it_of_size(&without, target, budget)?.is_some() {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// A certificate that `g` has no IT, read off the `d = 0` run of the
/// augmentation procedure.
///
/// With `T` a maximum partial IT and `c` the first class it misses, the
/// procedure runs on the classes `S(T) ∪ {c}` from the seed `(∅, T)`. The
/// returned certificate has `S = S(I) ∪ {c}` and `Z = E(G[I])`. It is checked
/// with [`verify_certificate`] before being returned.
pub fn no_it_certificate(
    g: &MultipartiteGraph,
    budget: &mut Budget,
) -> Result<NoItCertificate, ImcError> {
    require_nonempty_classes(g)?;
    let best = max_partial_it_with_budget(g, budget)?;
    let support = best.witness.support();
    let missing = (0..g.num_classes())
        .find(|&c| !support.contains(c))
        .ok_or(SolveError::HasTransversal)?;
    let mut kept = support.clone();
    kept.insert(missing);
    let order = kept.to_vec();
    let local = |c: usize| order.binary_search(&c).expect("class is kept");
    let sub = g.induced_on_classes(&kept);
    let t = Transversal::from_vertices(
        best.witness
            .iter()
            .map(|v| VertexRef::new(local(v.part), v.index)),
    )
    .expect("distinct classes stay distinct");
    let seed = FeasiblePair::seed(&sub, VertexSet::new(), t);
    let run = run_with_max(&sub, &seed, best.size, budget)?;
    let lift = |v: VertexRef| VertexRef::new(order[v.part], v.index);
    let mut classes: ClassSet = run.pair.i.iter().map(|v| order[v.part]).collect();
    classes.insert(missing);
    let edges = sub
        .induced_edges(&run.pair.i)
        .into_iter()
        .map(|(a, b)| (lift(a), lift(b)))
        .collect();
    let cert = NoItCertificate::new(classes, edges);
    verify_certificate(g, &cert).map_err(|defect| {
        ImcError::InvariantViolated(format!("engine certificate is invalid: {defect}"))
    })?;
    Ok(cert)
}
