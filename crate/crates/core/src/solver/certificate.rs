//! Combinatorial certificates that a graph has no independent transversal.
//!
//! A certificate is a set of classes `S` together with a set of edges `Z`
//! inside `G_S` such that the endpoints of `Z` dominate every vertex of `G_S`,
//! `|Z| <= |S| - 1`, and every class of `S` contains an endpoint of `Z`.
//! Such a pair rules out an IT: any IT of `G_S` would have to avoid the
//! neighborhoods of the `|Z|` edges, which together cover all of `G_S`.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use super::{has_full_it, SolveError};
use crate::budget::Budget;
use crate::graph::{ClassSet, MultipartiteGraph, VertexRef, VertexSet};

/// A pair `(S, Z)` as described in the module docs. Edges are stored in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoItCertificate {
    pub classes: ClassSet,
    pub edges: Vec<(VertexRef, VertexRef)>,
}

impl NoItCertificate {
    pub fn new(classes: ClassSet, mut edges: Vec<(VertexRef, VertexRef)>) -> Self {
        for e in edges.iter_mut() {
            if e.1 < e.0 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        NoItCertificate { classes, edges }
    }

    pub fn endpoints(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Text block: `S`, one `edge` line per element of `Z`, and the verdict
    /// of [`verify_certificate`] against `g`.
    pub fn render(&self, g: &MultipartiteGraph) -> String {
        let verdict = match verify_certificate(g, self) {
            Ok(()) => "valid".to_string(),
            Err(defect) => format!("invalid: {defect}"),
        };
        format!("{self}verdict {verdict}\n")
    }
}

impl fmt::Display for NoItCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "classes")?;
        for c in &self.classes {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        writeln!(f, "edges {}", self.edges.len())?;
        for (a, b) in &self.edges {
            writeln!(f, "edge {} {} {} {}", a.part, a.index, b.part, b.index)?;
        }
        Ok(())
    }
}

/// Why a candidate certificate fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateDefect {
    #[error("class {0} is out of range")]
    ClassOutOfRange(usize),
    #[error("{0} {1} is not an edge of the graph")]
    NotAnEdge(VertexRef, VertexRef),
    #[error("edge {0} {1} leaves the certified classes")]
    EdgeOutsideClasses(VertexRef, VertexRef),
    #[error("{edges} edges for {classes} classes")]
    TooManyEdges { edges: usize, classes: usize },
    #[error("class {0} contains no edge endpoint")]
    ClassNotMet(usize),
    #[error("vertex {0} is not dominated")]
    Undominated(VertexRef),
}

/// Checks the three certificate conditions.
pub fn verify_certificate(
    g: &MultipartiteGraph,
    cert: &NoItCertificate,
) -> Result<(), CertificateDefect> {
    if let Some(c) = cert.classes.iter().find(|&c| c >= g.num_classes()) {
        return Err(CertificateDefect::ClassOutOfRange(c));
    }
    for &(a, b) in &cert.edges {
        if !g.contains(a) || !g.contains(b) || !g.is_adjacent(a, b) {
            return Err(CertificateDefect::NotAnEdge(a, b));
        }
        if !cert.classes.contains(a.part) || !cert.classes.contains(b.part) {
            return Err(CertificateDefect::EdgeOutsideClasses(a, b));
        }
    }
    if cert.edges.len() + 1 > cert.classes.len() {
        return Err(CertificateDefect::TooManyEdges {
            edges: cert.edges.len(),
            classes: cert.classes.len(),
        });
    }
    let x = cert.endpoints();
    let met = g.class_support(&x);
    if let Some(c) = cert.classes.iter().find(|&c| !met.contains(c)) {
        return Err(CertificateDefect::ClassNotMet(c));
    }
    let target = g.vertices_of_classes(&cert.classes);
    match g.undominated(&x, &target).first() {
        Some(v) => Err(CertificateDefect::Undominated(v)),
        None => Ok(()),
    }
}

pub(crate) fn require_nonempty_classes(g: &MultipartiteGraph) -> Result<(), SolveError> {
    match (0..g.num_classes()).find(|&c| g.class_size(c) == 0) {
        Some(c) => Err(SolveError::EmptyClass(c)),
        None => Ok(()),
    }
}

/// Exhaustive smallest certificate: class sets by increasing size (then
/// lexicographically), and for each, edge sets by increasing size (then
/// lexicographically). The first valid pair is returned.
///
/// Graphs with an empty class admit no certificate of this shape and are
/// rejected up front, as are graphs that have a full IT. `Ok(None)` means the
/// exhaustive search found nothing.
pub fn no_it_certificate_brute(
    g: &MultipartiteGraph,
    budget: &mut Budget,
) -> Result<Option<NoItCertificate>, SolveError> {
    require_nonempty_classes(g)?;
    if has_full_it(g, budget)? {
        return Err(SolveError::HasTransversal);
    }
    for s in 2..=g.num_classes() {
        for classes in (0..g.num_classes()).combinations(s) {
            let classes: ClassSet = classes.into_iter().collect();
            let sub = g.vertices_of_classes(&classes);
            let edges = g.induced_edges(&sub);
            for z in s.div_ceil(2)..s {
                let mut search = EdgeSearch {
                    g,
                    classes: &classes,
                    target: &sub,
                    edges: &edges,
                    z,
                    chosen: Vec::with_capacity(z),
                };
                if search.run(0, budget)? {
                    let picked = search.chosen.iter().map(|&k| edges[k]).collect();
                    return Ok(Some(NoItCertificate::new(classes, picked)));
                }
            }
        }
    }
    Ok(None)
}

struct EdgeSearch<'a> {
    g: &'a MultipartiteGraph,
    classes: &'a ClassSet,
    target: &'a VertexSet,
    edges: &'a [(VertexRef, VertexRef)],
    z: usize,
    chosen: Vec<usize>,
}

impl EdgeSearch<'_> {
    fn run(&mut self, from: usize, budget: &mut Budget) -> Result<bool, SolveError> {
        budget.tick()?;
        let endpoints: VertexSet = self
            .chosen
            .iter()
            .flat_map(|&k| [self.edges[k].0, self.edges[k].1])
            .collect();
        let left = self.z - self.chosen.len();
        if left == 0 {
            let met = self.g.class_support(&endpoints);
            return Ok(self.classes.is_subset(&met) && self.g.dominates(&endpoints, self.target));
        }
        let unmet = self.classes.difference(&self.g.class_support(&endpoints)).len();
        if unmet > 2 * left || self.edges.len() - from < left {
            return Ok(false);
        }
        for k in from..=self.edges.len() - left {
            self.chosen.push(k);
            if self.run(k + 1, budget)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}
