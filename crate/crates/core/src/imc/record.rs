use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use super::feasible::{run_with_max, AlgorithmStep, FeasiblePair};
use super::{class_edges, first_cycle, ImcError};
use crate::bounds::Rat;
use crate::budget::Budget;
use crate::graph::{ClassSet, GraphError, MultipartiteGraph, VertexRef, VertexSet};
use crate::solver::{max_partial_it_with_budget, Transversal};

/// How far the class-size hypotheses reach for a graph and defect `d`.
///
/// With `n` the smallest class size, `Δ` the maximum degree and
/// `q = ⌊r/(d+1)⌋`, the levels require, cumulatively and strictly:
///
/// | level | condition |
/// |---|---|
/// | `SetupI` | `n > 2Δ(1 − (2d+3)/(2r))` |
/// | `SetupII` | `n > 2Δ(1 − (4d+5)/(4r))` |
/// | `OddSetupI` | `q` odd, `q ≥ 3`, `n > 2Δ(1 − 1/(q−1))` |
/// | `OddSetupII` | `n > Δ(2 − (6d+7)/(3r))` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetupLevel {
    None,
    SetupI,
    SetupII,
    OddSetupI,
    OddSetupII,
}

impl fmt::Display for SetupLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetupLevel::None => "none",
            SetupLevel::SetupI => "setup-i",
            SetupLevel::SetupII => "setup-ii",
            SetupLevel::OddSetupI => "odd-setup-i",
            SetupLevel::OddSetupII => "odd-setup-ii",
        })
    }
}

/// The highest [`SetupLevel`] whose thresholds `g` clears for defect `d`.
/// Graphs without classes, or with `d + 1 > r`, are at level `None`.
pub fn setup_level(g: &MultipartiteGraph, d: usize) -> SetupLevel {
    let r = g.num_classes();
    if r == 0 || d + 1 > r {
        return SetupLevel::None;
    }
    let rat = |x: usize| Rat::from_integer(x as i64);
    let (n, delta, r_, d_) = (rat(g.min_class_size()), rat(g.max_degree()), rat(r), rat(d));
    let one = rat(1);
    let two = rat(2);
    if n <= two * delta * (one - (two * d_ + rat(3)) / (two * r_)) {
        return SetupLevel::None;
    }
    if n <= two * delta * (one - (rat(4) * d_ + rat(5)) / (rat(4) * r_)) {
        return SetupLevel::SetupI;
    }
    let q = r / (d + 1);
    if q < 3 || q.is_multiple_of(2) || n <= two * delta * (one - one / rat(q - 1)) {
        return SetupLevel::SetupII;
    }
    if n <= delta * (two - (rat(6) * d_ + rat(7)) / (rat(3) * r_)) {
        return SetupLevel::OddSetupI;
    }
    SetupLevel::OddSetupII
}

/// The forest `F_I` on `S(I) ∪ R` with the edges of the class multigraph of
/// `I`. Components are listed by their least class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedForest {
    pub nodes: ClassSet,
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<ClassSet>,
}

impl ExtendedForest {
    fn new(num_classes: usize, nodes: ClassSet, edges: Vec<(usize, usize)>) -> Self {
        let components = components_of(num_classes, &nodes, &edges);
        ExtendedForest {
            nodes,
            edges,
            components,
        }
    }

    /// Index into [`Self::components`] of the component holding `class`.
    pub fn component_of(&self, class: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(class))
    }
}

fn components_of(num_classes: usize, nodes: &ClassSet, edges: &[(usize, usize)]) -> Vec<ClassSet> {
    let mut uf = UnionFind::<usize>::new(num_classes);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let mut by_root: BTreeMap<usize, ClassSet> = BTreeMap::new();
    for c in nodes {
        by_root.entry(uf.find(c)).or_default().insert(c);
    }
    let mut comps: Vec<ClassSet> = by_root.into_values().collect();
    comps.sort_by_key(|c| c.first());
    comps
}

/// The sets `A_v` for `v ∈ I`, and the set `D` of vertices with at least two
/// neighbors in `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASets {
    pub av: BTreeMap<VertexRef, VertexSet>,
    pub twice: VertexSet,
}

/// `A_v` is the set of vertices in the classes `target` whose only neighbor in
/// `I` is `v`. `D` ranges over all of `V(G)`.
pub fn compute_av(g: &MultipartiteGraph, i: &VertexSet, target: &ClassSet) -> ASets {
    let mut av: BTreeMap<VertexRef, VertexSet> = i.iter().map(|v| (v, VertexSet::new())).collect();
    let mut twice = VertexSet::new();
    for x in g.vertices() {
        let seen = g.neighbors_in(x, i);
        match seen.len() {
            0 => {}
            1 if target.contains(x.part) => {
                let v = seen.first().expect("one neighbor");
                av.get_mut(&v).expect("v is in I").insert(x);
            }
            1 => {}
            _ => {
                twice.insert(x);
            }
        }
    }
    ASets { av, twice }
}

/// True iff `G[I]` is a perfect matching and the class multigraph of `I` is
/// a forest.
pub fn is_imc(g: &MultipartiteGraph, i: &VertexSet) -> bool {
    i.iter().all(|v| g.neighbors_in(v, i).len() == 1)
        && first_cycle(g.num_classes(), &class_edges(g, i)).is_none()
}

/// The output of [`extract_imc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImcRecord {
    pub d: usize,
    pub i: VertexSet,
    pub t: Transversal,
    pub r_classes: ClassSet,
    pub forest: ExtendedForest,
    /// The edges of `G[I]`, present iff `G[I]` is a perfect matching.
    pub matching: Option<Vec<(VertexRef, VertexRef)>>,
    pub a_sets: ASets,
    pub setup: SetupLevel,
    pub steps: Vec<AlgorithmStep>,
}

impl ImcRecord {
    /// `t = |S(I) ∪ R|`.
    pub fn t_count(&self) -> usize {
        self.forest.nodes.len()
    }

    /// `S(I)`.
    pub fn support(&self) -> ClassSet {
        self.i.iter().map(|v| v.part).collect()
    }

    pub fn is_imc(&self) -> bool {
        self.matching.is_some()
    }

    /// The partner of `v` in the matching, if `v ∈ I` and `G[I]` is one.
    pub fn partner(&self, v: VertexRef) -> Option<VertexRef> {
        self.matching.as_ref()?.iter().find_map(|&(a, b)| match () {
            _ if a == v => Some(b),
            _ if b == v => Some(a),
            _ => None,
        })
    }

    /// Canonical text: header, matching edges, forest edges, components and
    /// `A_v` sizes.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ImcRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "imc d {} t {} size {}", self.d, self.t_count(), self.i.len())?;
        writeln!(f, "setup {}", self.setup)?;
        write!(f, "r-classes")?;
        for c in &self.r_classes {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        match &self.matching {
            Some(m) => {
                writeln!(f, "matching {}", m.len())?;
                for (a, b) in m {
                    writeln!(f, "edge {} {} {} {}", a.part, a.index, b.part, b.index)?;
                }
            }
            None => writeln!(f, "matching none")?,
        }
        writeln!(f, "forest-edges {}", self.forest.edges.len())?;
        for (a, b) in &self.forest.edges {
            writeln!(f, "forest-edge {a} {b}")?;
        }
        writeln!(f, "components {}", self.forest.components.len())?;
        for comp in &self.forest.components {
            write!(f, "component")?;
            for c in comp {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        for (v, a) in &self.a_sets.av {
            writeln!(f, "a-set {} {} {}", v.part, v.index, a.len())?;
        }
        writeln!(f, "twice-dominated {}", self.a_sets.twice.len())
    }
}

/// Runs the augmentation procedure from `seed` and checks its structural
/// conclusions.
///
/// Preconditions, reported as [`ImcError::Precondition`]: every class is
/// nonempty, `d < r`, and the largest partial IT has exactly `r − d − 1`
/// vertices. The seed must be feasible.
///
/// Checked conclusions, reported as [`ImcError::InvariantViolated`]: `I`
/// contains the seed, meets at least two classes, and `T` keeps its support
/// and agrees with the seed on the seed's classes; `I` dominates
/// `S(I) ∪ R`; `F_I` has `d + 1` components, each with exactly one class of
/// `R`; `|I| ≤ 2(t − d − 1)`. At [`SetupLevel::SetupI`] and above, `G[I]`
/// must moreover be a perfect matching with `|I| = 2(t − d − 1)`.
pub fn extract_imc(
    g: &MultipartiteGraph,
    d: usize,
    seed: &FeasiblePair,
    budget: &mut Budget,
) -> Result<ImcRecord, ImcError> {
    g.check_set(&seed.i)?;
    g.check_set(&seed.t.vertices())?;
    g.check_classes(&seed.r_classes)?;
    let r = g.num_classes();
    if let Some(c) = (0..r).find(|&c| g.class_size(c) == 0) {
        return Err(ImcError::Precondition(format!("class {c} is empty")));
    }
    if d + 1 > r {
        return Err(ImcError::Precondition(format!("defect {d} needs more than {r} classes")));
    }
    let max = max_partial_it_with_budget(g, budget)?.size;
    if max + d + 1 != r {
        return Err(ImcError::Precondition(format!(
            "largest partial IT has {max} vertices, expected r - d - 1 = {}",
            r - d - 1
        )));
    }
    let run = run_with_max(g, seed, max, budget)?;
    let pair = run.pair;
    let fail = |msg: String| Err(ImcError::InvariantViolated(msg));

    let support = pair.active_classes();
    if !seed.i.is_subset(&pair.i) {
        return fail("I does not contain the seed".into());
    }
    if support.len() < 2 {
        return fail(format!("I meets {} classes", support.len()));
    }
    if pair.t.support() != seed.t.support() {
        return fail("T changed its support".into());
    }
    let seed_support: ClassSet = seed.i.iter().map(|v| v.part).collect();
    if let Some(c) = seed_support.iter().find(|&c| pair.t.get(c) != seed.t.get(c)) {
        return fail(format!("T changed on seed class {c}"));
    }
    let nodes = support.union(&pair.r_classes);
    if !g.dominates(&pair.i, &g.vertices_of_classes(&nodes)) {
        return fail("I does not dominate S(I) and R".into());
    }
    let forest = ExtendedForest::new(r, nodes, class_edges(g, &pair.i));
    if forest.components.len() != d + 1 {
        return fail(format!("F_I has {} components", forest.components.len()));
    }
    if let Some(comp) = forest
        .components
        .iter()
        .find(|c| c.intersection(&pair.r_classes).len() != 1)
    {
        return fail(format!("a component of F_I holds {} classes of R", comp.intersection(&pair.r_classes).len()));
    }
    let t = forest.nodes.len();
    let bound = 2 * (t - d - 1);
    if pair.i.len() > bound {
        return fail(format!("|I| = {} exceeds 2(t - d - 1) = {bound}", pair.i.len()));
    }
    let perfect = pair.i.iter().all(|v| g.neighbors_in(v, &pair.i).len() == 1);
    let setup = setup_level(g, d);
    if setup >= SetupLevel::SetupI && !(perfect && pair.i.len() == bound) {
        return fail(format!(
            "above the class-size threshold but G[I] is not a perfect matching of {bound} vertices"
        ));
    }
    let matching = perfect.then(|| g.induced_edges(&pair.i));
    let a_sets = compute_av(g, &pair.i, &forest.nodes);
    Ok(ImcRecord {
        d,
        i: pair.i,
        t: pair.t,
        r_classes: pair.r_classes,
        forest,
        matching,
        a_sets,
        setup,
        steps: run.steps,
    })
}

/// `other` is similar to the record's `I`: same support, dominates
/// `S(I) ∪ R`, and its forest on `S(I) ∪ R` has the same components.
pub fn similar(g: &MultipartiteGraph, record: &ImcRecord, other: &VertexSet) -> bool {
    let support: ClassSet = other.iter().map(|v| v.part).collect();
    if support != record.support() {
        return false;
    }
    if !g.dominates(other, &g.vertices_of_classes(&record.forest.nodes)) {
        return false;
    }
    let edges = class_edges(g, other);
    first_cycle(g.num_classes(), &edges).is_none()
        && components_of(g.num_classes(), &record.forest.nodes, &edges) == record.forest.components
}

/// The auxiliary graph whose classes are the sets `A_v`, listed in matching
/// order (`v_1, w_1, v_2, w_2, …`). Edges inside an `A_v` and between the
/// two sets of a matched pair are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGraph {
    pub graph: MultipartiteGraph,
    /// `owners[k]` is the vertex `v ∈ I` with class `k` equal to `A_v`.
    pub owners: Vec<VertexRef>,
    /// `members[k][j]` is the vertex of `G` at index `j` of class `k`.
    pub members: Vec<Vec<VertexRef>>,
}

impl HGraph {
    /// Class `k ^ 1` is the partner class of class `k`.
    pub fn partner_class(k: usize) -> usize {
        k ^ 1
    }

    /// Translates a vertex of `H` back into `G`.
    pub fn original(&self, v: VertexRef) -> VertexRef {
        self.members[v.part][v.index]
    }

    pub fn original_set<I: IntoIterator<Item = VertexRef>>(&self, vs: I) -> VertexSet {
        vs.into_iter().map(|v| self.original(v)).collect()
    }

    /// Position of a vertex of `G` in `H`, if it lies in some `A_v`.
    pub fn locate(&self, x: VertexRef) -> Option<VertexRef> {
        self.members.iter().enumerate().find_map(|(k, m)| {
            m.iter().position(|&y| y == x).map(|j| VertexRef::new(k, j))
        })
    }
}

/// Builds `H` for an IMC record. Returns `None` if `G[I]` is not a perfect
/// matching.
pub fn build_h(g: &MultipartiteGraph, record: &ImcRecord) -> Option<HGraph> {
    let matching = record.matching.as_ref()?;
    let owners: Vec<VertexRef> = matching.iter().flat_map(|&(a, b)| [a, b]).collect();
    let members: Vec<Vec<VertexRef>> = owners
        .iter()
        .map(|v| record.a_sets.av[v].to_vec())
        .collect();
    let mut edges = vec![];
    for k in 0..members.len() {
        for l in k + 1..members.len() {
            if l == HGraph::partner_class(k) {
                continue;
            }
            for (ia, &a) in members[k].iter().enumerate() {
                for (ib, &b) in members[l].iter().enumerate() {
                    if g.is_adjacent(a, b) {
                        edges.push((VertexRef::new(k, ia), VertexRef::new(l, ib)));
                    }
                }
            }
        }
    }
    let sizes = members.iter().map(Vec::len).collect();
    let graph = MultipartiteGraph::from_edges(sizes, edges).expect("edges join distinct classes");
    Some(HGraph {
        graph,
        owners,
        members,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ItFromImcError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("root class {0} is not among the tree classes")]
    OmitOutside(usize),
    #[error("the tree classes do not induce a tree: {0}")]
    NotATree(String),
    #[error("{0} is not in the root class or has a neighbor in the restricted I")]
    BadUndominated(VertexRef),
    #[error("picks are not independent: {0} and {1} are adjacent")]
    NotIndependent(VertexRef, VertexRef),
}

/// Reads a partial IT off an IMC restricted to a subtree of its class
/// forest.
///
/// `I' = I ∩ V(tree_classes)` must be a matching whose class multigraph is a
/// tree on exactly `tree_classes`. Rooting that tree at `omit`, every other
/// class contributes the endpoint, in that class, of the matching edge toward
/// its parent. If `undominated` is given it must lie in the root class and
/// have no neighbor in `I'`; it is then added as the root's pick.
pub fn it_from_imc(
    g: &MultipartiteGraph,
    i: &VertexSet,
    tree_classes: &ClassSet,
    omit: usize,
    undominated: Option<VertexRef>,
) -> Result<Transversal, ItFromImcError> {
    g.check_set(i)?;
    g.check_classes(tree_classes)?;
    if !tree_classes.contains(omit) {
        return Err(ItFromImcError::OmitOutside(omit));
    }
    let sub: VertexSet = i.iter().filter(|v| tree_classes.contains(v.part)).collect();
    let edges = g.induced_edges(&sub);
    if let Some(v) = sub.iter().find(|&v| g.neighbors_in(v, &sub).len() != 1) {
        return Err(ItFromImcError::NotATree(format!("{v} is not matched inside the tree")));
    }
    if edges.len() + 1 != tree_classes.len() {
        return Err(ItFromImcError::NotATree(format!(
            "{} edges on {} classes",
            edges.len(),
            tree_classes.len()
        )));
    }
    let class_pairs: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (a.part, b.part)).collect();
    if let Some((a, b)) = first_cycle(g.num_classes(), &class_pairs) {
        return Err(ItFromImcError::NotATree(format!("classes {a} and {b} close a cycle")));
    }
    let mut picks = vec![];
    let mut reached = ClassSet::new();
    reached.insert(omit);
    let mut queue = VecDeque::from([omit]);
    while let Some(c) = queue.pop_front() {
        for &(a, b) in &edges {
            let (here, there) = match (a.part == c, b.part == c) {
                (true, _) => (a, b),
                (_, true) => (b, a),
                _ => continue,
            };
            debug_assert_eq!(here.part, c);
            if reached.insert(there.part) {
                picks.push(there);
                queue.push_back(there.part);
            }
        }
    }
    if reached != *tree_classes {
        return Err(ItFromImcError::NotATree("the class graph is disconnected".into()));
    }
    if let Some(u) = undominated {
        if u.part != omit || !g.contains(u) || !g.neighbors_in(u, &sub).is_empty() {
            return Err(ItFromImcError::BadUndominated(u));
        }
        picks.push(u);
    }
    let out: VertexSet = picks.iter().copied().collect();
    if let Some(&(a, b)) = g.induced_edges(&out).first() {
        return Err(ItFromImcError::NotIndependent(a, b));
    }
    Ok(Transversal::from_vertices(picks).expect("one pick per tree class"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, Recipe};
    use crate::graph::{complete_bipartite, disjoint_union};
    use crate::solver::max_partial_it;

    fn v(p: usize, i: usize) -> VertexRef {
        VertexRef::new(p, i)
    }

    fn classes(cs: &[usize]) -> ClassSet {
        cs.iter().copied().collect()
    }

    fn extract(g: &MultipartiteGraph, d: usize) -> ImcRecord {
        let seed = FeasiblePair::seed(g, VertexSet::new(), max_partial_it(g).witness);
        extract_imc(g, d, &seed, &mut Budget::unlimited()).unwrap()
    }

    #[test]
    fn setup_levels_on_small_graphs() {
        assert_eq!(setup_level(&complete_bipartite(4, 4), 0), SetupLevel::SetupII);
        let two = disjoint_union(&complete_bipartite(4, 4), &complete_bipartite(4, 4));
        assert_eq!(setup_level(&two, 1), SetupLevel::SetupII);
        let two = disjoint_union(&complete_bipartite(3, 3), &complete_bipartite(3, 3));
        assert_eq!(setup_level(&two, 1), SetupLevel::SetupII);
        // n = 1, Δ = 2, r = 3, d = 0: 1 > 4(1 − 3/6) = 2 fails.
        let path = MultipartiteGraph::from_edges(vec![1, 1, 1], [(v(0, 0), v(1, 0)), (v(1, 0), v(2, 0))]).unwrap();
        assert_eq!(setup_level(&path, 0), SetupLevel::None);
        assert_eq!(setup_level(&path, 3), SetupLevel::None);
    }

    #[test]
    fn odd_setup_levels() {
        // Three classes of size 3, each vertex of degree 1 (a perfect
        // matching between classes 0 and 1), d = 0: q = 3 and every
        // threshold is below 3.
        let g = MultipartiteGraph::from_edges(
            vec![3, 3, 3],
            (0..3).map(|k| (v(0, k), v(1, k))),
        )
        .unwrap();
        assert_eq!(setup_level(&g, 0), SetupLevel::OddSetupII);
    }

    #[test]
    fn k44_gives_one_edge() {
        let g = complete_bipartite(4, 4);
        let rec = extract(&g, 0);
        assert_eq!(rec.t_count(), 2);
        assert_eq!(rec.i.len(), 2);
        assert_eq!(rec.matching, Some(vec![(v(0, 0), v(1, 0))]));
        assert_eq!(rec.forest.components, vec![classes(&[0, 1])]);
        let a0 = &rec.a_sets.av[&v(0, 0)];
        assert_eq!(*a0, g.class_vertices(1).collect());
        assert_eq!(rec.a_sets.av[&v(1, 0)], g.class_vertices(0).collect());
        assert!(rec.a_sets.twice.is_empty());
        assert_eq!(
            rec.render(),
            "imc d 0 t 2 size 2\nsetup setup-ii\nr-classes 1\nmatching 1\nedge 0 0 1 0\n\
             forest-edges 1\nforest-edge 0 1\ncomponents 1\ncomponent 0 1\n\
             a-set 0 0 4\na-set 1 0 4\ntwice-dominated 0\n"
        );
    }

    #[test]
    fn two_k33_blocks_with_defect_one() {
        let g = disjoint_union(&complete_bipartite(3, 3), &complete_bipartite(3, 3));
        let rec = extract(&g, 1);
        assert_eq!(rec.forest.components.len(), 2);
        assert_eq!(rec.forest.components, vec![classes(&[0, 1]), classes(&[2, 3])]);
        assert_eq!(rec.i.len(), 4);
        assert_eq!(rec.matching.as_ref().unwrap().len(), 2);
        for comp in &rec.forest.components {
            assert_eq!(comp.intersection(&rec.r_classes).len(), 1);
        }
    }

    #[test]
    fn small_k_construction_at_delta_four() {
        let (g, claim) = build(&Recipe::kdd(4).rows_spine(3)).unwrap();
        assert_eq!((claim.r, claim.defect, claim.n, claim.delta), (6, 2, 5, 4));
        let rec = extract(&g, 1);
        assert!(rec.setup >= SetupLevel::SetupI);
        assert_eq!(rec.forest.components.len(), 2);
        assert_eq!(rec.i.len(), 2 * (rec.t_count() - 2));
        assert!(is_imc(&g, &rec.i));
    }

    #[test]
    fn preconditions_are_reported() {
        let g = complete_bipartite(2, 2);
        let seed = FeasiblePair::seed(&g, VertexSet::new(), max_partial_it(&g).witness);
        assert!(matches!(
            extract_imc(&g, 1, &seed, &mut Budget::unlimited()),
            Err(ImcError::Precondition(_))
        ));
        let g = MultipartiteGraph::edgeless(vec![2, 2]);
        let seed = FeasiblePair::seed(&g, VertexSet::new(), max_partial_it(&g).witness);
        assert!(matches!(
            extract_imc(&g, 0, &seed, &mut Budget::unlimited()),
            Err(ImcError::Precondition(_))
        ));
    }

    #[test]
    fn partner_is_in_a_set() {
        let g = disjoint_union(&complete_bipartite(3, 3), &complete_bipartite(3, 3));
        let rec = extract(&g, 1);
        for &(a, b) in rec.matching.as_ref().unwrap() {
            assert!(rec.a_sets.av[&a].contains(&b));
            assert!(rec.a_sets.av[&b].contains(&a));
            assert_eq!(rec.partner(a), Some(b));
        }
    }

    #[test]
    fn h_of_two_blocks() {
        let g = disjoint_union(&complete_bipartite(3, 3), &complete_bipartite(3, 3));
        let rec = extract(&g, 1);
        let h = build_h(&g, &rec).unwrap();
        assert_eq!(h.graph.num_classes(), 4);
        assert_eq!(h.graph.num_edges(), 0);
        assert_eq!(h.owners, rec.i.to_vec());
        let it: Vec<VertexRef> = (0..4).map(|k| VertexRef::new(k, 2)).collect();
        let back = h.original_set(it);
        assert!(is_imc(&g, &back));
        assert!(similar(&g, &rec, &back));
        assert_eq!(h.locate(v(1, 2)), Some(v(0, 2)));
    }

    #[test]
    fn it_from_single_edge_tree() {
        let g = complete_bipartite(2, 2);
        let i: VertexSet = [v(0, 0), v(1, 0)].into_iter().collect();
        let t = it_from_imc(&g, &i, &classes(&[0, 1]), 0, None).unwrap();
        assert_eq!(t.vertices(), [v(1, 0)].into_iter().collect());
        assert_eq!(
            it_from_imc(&g, &i, &classes(&[0, 1]), 2, None),
            Err(ItFromImcError::OmitOutside(2))
        );
    }

    /// A path of matching edges 0-1 (0.0 1.0) and 1-2 (1.1 2.0), plus an
    /// extra vertex 1.2 adjacent only to 2.1.
    fn three_class_path() -> (MultipartiteGraph, VertexSet) {
        let g = MultipartiteGraph::from_edges(
            vec![1, 3, 2],
            [(v(0, 0), v(1, 0)), (v(1, 1), v(2, 0)), (v(1, 2), v(2, 1))],
        )
        .unwrap();
        let i = [v(0, 0), v(1, 0), v(1, 1), v(2, 0)].into_iter().collect();
        (g, i)
    }

    #[test]
    fn it_from_path_tree_omitting_the_middle() {
        let (g, i) = three_class_path();
        assert!(is_imc(&g, &i));
        let t = it_from_imc(&g, &i, &classes(&[0, 1, 2]), 1, None).unwrap();
        assert_eq!(t.vertices(), [v(0, 0), v(2, 0)].into_iter().collect());
        assert!(g.is_independent(&t.vertices()));
        let t = it_from_imc(&g, &i, &classes(&[0, 1, 2]), 0, None).unwrap();
        assert_eq!(t.vertices(), [v(1, 0), v(2, 0)].into_iter().collect());
    }

    #[test]
    fn it_from_path_tree_with_an_undominated_vertex() {
        let (g, i) = three_class_path();
        let all = classes(&[0, 1, 2]);
        let t = it_from_imc(&g, &i, &all, 1, Some(v(1, 2))).unwrap();
        assert_eq!(t.len(), 3);
        assert!(g.is_independent(&t.vertices()));
        assert_eq!(
            it_from_imc(&g, &i, &all, 1, Some(v(1, 0))),
            Err(ItFromImcError::BadUndominated(v(1, 0)))
        );
        assert!(matches!(
            it_from_imc(&g, &i, &classes(&[0, 2]), 0, None),
            Err(ItFromImcError::NotATree(_))
        ));
    }
}
