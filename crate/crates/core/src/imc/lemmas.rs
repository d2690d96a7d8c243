//! Runtime checks of the structure that an IMC must have once the class
//! sizes clear the [`SetupLevel`] thresholds.
//!
//! Every check here is a theorem under its gate, so a `Fail` outcome means a
//! bug in the engine, not a property of the input graph.

use std::fmt;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::record::{build_h, is_imc, similar, HGraph, ImcRecord, SetupLevel};
use crate::budget::{Budget, BudgetExhausted};
use crate::graph::{MultipartiteGraph, VertexRef, VertexSet};
use crate::solver::search::{first_of_size, CostEnumerator};
use crate::solver::{avoidance_it, has_it_of_size, SolveError};

/// How many transversals of `H` the IMC check visits at most.
pub const H_TRANSVERSAL_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOutcome {
    /// The check held on `cases` instances of its quantifier.
    Pass { cases: usize },
    Fail(String),
    NotApplicable,
    BudgetExhausted,
}

impl fmt::Display for LemmaOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaOutcome::Pass { cases } => write!(f, "pass ({cases} cases)"),
            LemmaOutcome::Fail(why) => write!(f, "FAIL: {why}"),
            LemmaOutcome::NotApplicable => f.write_str("not applicable"),
            LemmaOutcome::BudgetExhausted => f.write_str("budget exhausted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaEntry {
    pub name: &'static str,
    pub outcome: LemmaOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub level: SetupLevel,
    pub entries: Vec<LemmaEntry>,
}

impl LemmaReport {
    pub fn get(&self, name: &str) -> Option<&LemmaOutcome> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.outcome)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, LemmaOutcome::Fail(_)))
    }

    pub fn passed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, LemmaOutcome::Pass { .. }))
            .count()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "setup {}", self.level)?;
        for e in &self.entries {
            writeln!(f, "{}: {}", e.name, e.outcome)?;
        }
        Ok(())
    }
}

type Check = fn(&Ctx<'_>, &mut Budget) -> Result<LemmaOutcome, BudgetExhausted>;

const CHECKS: &[(&str, SetupLevel, Check)] = &[
    ("twice_dominated_bound", SetupLevel::None, twice_dominated_bound),
    ("a_set_union_lower_bound", SetupLevel::None, a_set_union_lower_bound),
    ("a_set_union_exceeds", SetupLevel::SetupII, a_set_union_exceeds),
    ("avoidance_extension", SetupLevel::SetupI, avoidance_extension),
    ("a_sets_same_component", SetupLevel::SetupI, a_sets_same_component),
    ("matched_a_sets_complete", SetupLevel::SetupI, matched_a_sets_complete),
    ("matched_swap_similar", SetupLevel::SetupI, matched_swap_similar),
    ("h_transversals_are_imcs", SetupLevel::SetupI, h_transversals_are_imcs),
    ("h_transversal_after_deletion", SetupLevel::SetupII, h_transversal_after_deletion),
    ("vertex_joined_to_a_set", SetupLevel::SetupII, vertex_joined_to_a_set),
    ("component_domination_count", SetupLevel::SetupII, component_domination_count),
    ("component_size_at_least_q", SetupLevel::OddSetupI, component_size_at_least_q),
    ("joined_pair_adjacent", SetupLevel::OddSetupII, joined_pair_adjacent),
    (
        "critical_union_complete_bipartite",
        SetupLevel::OddSetupII,
        critical_union_complete_bipartite,
    ),
];

struct Ctx<'a> {
    g: &'a MultipartiteGraph,
    rec: &'a ImcRecord,
    h: Option<HGraph>,
    /// `V'`, the vertices of `S(I) ∪ R`.
    v_prime: VertexSet,
    n: i64,
    delta: i64,
    t: i64,
    d: i64,
}

impl Ctx<'_> {
    fn matching(&self) -> &[(VertexRef, VertexRef)] {
        self.rec.matching.as_deref().unwrap_or(&[])
    }

    fn a(&self, v: VertexRef) -> &VertexSet {
        &self.rec.a_sets.av[&v]
    }

    fn same_component(&self, a: usize, b: usize) -> bool {
        self.rec.forest.component_of(a) == self.rec.forest.component_of(b)
    }

    fn joined(&self, x: VertexRef, set: &VertexSet) -> bool {
        set.iter().all(|y| self.g.is_adjacent(x, y))
    }

    /// Ascending `|A_v|`, so that prefix sums are the smallest unions.
    fn sorted_a_sizes(&self) -> Vec<i64> {
        let mut sizes: Vec<i64> = self.rec.a_sets.av.values().map(|a| a.len() as i64).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// Runs every check whose gate the record's setup level reaches; the rest
/// are reported as not applicable. Budget exhaustion is reported per check.
pub fn check_structure_lemmas(
    g: &MultipartiteGraph,
    rec: &ImcRecord,
    budget: &mut Budget,
) -> LemmaReport {
    let ctx = Ctx {
        g,
        rec,
        h: build_h(g, rec),
        v_prime: g.vertices_of_classes(&rec.forest.nodes),
        n: g.min_class_size() as i64,
        delta: g.max_degree() as i64,
        t: rec.t_count() as i64,
        d: rec.d as i64,
    };
    let entries = CHECKS
        .iter()
        .map(|&(name, gate, check)| {
            let outcome = if rec.setup < gate {
                LemmaOutcome::NotApplicable
            } else {
                check(&ctx, budget).unwrap_or(LemmaOutcome::BudgetExhausted)
            };
            LemmaEntry { name, outcome }
        })
        .collect();
    LemmaReport {
        level: rec.setup,
        entries,
    }
}

fn pass(cases: usize) -> Result<LemmaOutcome, BudgetExhausted> {
    Ok(LemmaOutcome::Pass { cases })
}

fn fail(why: String) -> Result<LemmaOutcome, BudgetExhausted> {
    Ok(LemmaOutcome::Fail(why))
}

fn twice_dominated_bound(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let bound = 2 * c.delta * (c.t - c.d - 1) - c.t * c.n;
    let size = c.rec.a_sets.twice.len() as i64;
    if size <= bound {
        pass(1)
    } else {
        fail(format!("|D| = {size} > {bound}"))
    }
}

fn a_set_union_lower_bound(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let sizes = c.sorted_a_sizes();
    let mut sum = 0;
    for y in 0..=sizes.len() {
        let bound = (y as i64 + 4 * c.d + 4 - 4 * c.t) * c.delta + 2 * c.t * c.n;
        if sum < bound {
            return fail(format!("{y} sets A_v cover {sum} < {bound} vertices"));
        }
        if y < sizes.len() {
            sum += sizes[y];
        }
    }
    pass(sizes.len() + 1)
}

fn a_set_union_exceeds(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let sizes = c.sorted_a_sizes();
    let mut sum = 0;
    for y in 0..=sizes.len() {
        let bound = (y as i64 - 1) * c.delta;
        if sum <= bound {
            return fail(format!("{y} sets A_v cover {sum} <= {bound} vertices"));
        }
        if y < sizes.len() {
            sum += sizes[y];
        }
    }
    pass(sizes.len() + 1)
}

fn avoidance_extension(c: &Ctx<'_>, budget: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let u = crate::graph::ClassSet::all(c.g.num_classes()).difference(&c.rec.forest.nodes);
    let mut cases = 0;
    for x in c.g.vertices() {
        let mut base = c.rec.i.clone();
        base.insert(x);
        let forbidden = c.g.neighborhood(&base);
        match avoidance_it(c.g, &u, &forbidden, budget) {
            Ok(Some(_)) => cases += 1,
            Ok(None) => return fail(format!("no IT of the remaining classes avoids N(I + {x})")),
            Err(SolveError::Budget(b)) => return Err(b),
            Err(e) => return fail(e.to_string()),
        }
    }
    pass(cases)
}

fn a_sets_same_component(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    for &(v, w) in c.matching() {
        for x in c.a(v).union(c.a(w)).iter() {
            if !c.same_component(x.part, v.part) {
                return fail(format!("{x} in A_{v} or A_{w} lies in another component"));
            }
        }
    }
    pass(c.matching().len())
}

fn matched_a_sets_complete(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    for &(v, w) in c.matching() {
        for a in c.a(v) {
            if let Some(b) = c.a(w).iter().find(|&b| !c.g.is_adjacent(a, b)) {
                return fail(format!("{a} in A_{v} and {b} in A_{w} are not adjacent"));
            }
        }
    }
    pass(c.matching().len())
}

fn matched_swap_similar(c: &Ctx<'_>, budget: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let mut cases = 0;
    for &(v, w) in c.matching() {
        for a in c.a(v) {
            for b in c.a(w) {
                budget.tick()?;
                let mut swapped = c.rec.i.clone();
                swapped.remove(&v);
                swapped.remove(&w);
                swapped.insert(a);
                swapped.insert(b);
                if !(is_imc(c.g, &swapped) && similar(c.g, c.rec, &swapped)) {
                    return fail(format!("swapping {v} {w} for {a} {b} is not a similar IMC"));
                }
                cases += 1;
            }
        }
    }
    pass(cases)
}

fn all_h_vertices(h: &HGraph) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(h.graph.num_vertices());
    mask.insert_range(..);
    mask
}

fn h_transversals_are_imcs(c: &Ctx<'_>, budget: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let Some(h) = &c.h else {
        return fail("G[I] is not a perfect matching".into());
    };
    let classes: Vec<usize> = (0..h.graph.num_classes()).collect();
    let search = CostEnumerator {
        g: &h.graph,
        classes: &classes,
        cost: |_| 0,
    };
    let mut found = vec![];
    search.run(&all_h_vertices(h), 1, budget, |ids, _, _| {
        found.push(ids.to_vec());
        if found.len() >= H_TRANSVERSAL_CAP {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    if found.is_empty() {
        return fail("H has no transversal, although I is one".into());
    }
    for ids in &found {
        let back = h.original_set(ids.iter().map(|&id| h.graph.vertex(id)));
        if !(is_imc(c.g, &back) && similar(c.g, c.rec, &back)) {
            return fail(format!("transversal {back} of H is not a similar IMC"));
        }
    }
    pass(found.len())
}

fn h_transversal_after_deletion(c: &Ctx<'_>, budget: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let Some(h) = &c.h else {
        return fail("G[I] is not a perfect matching".into());
    };
    let classes: Vec<usize> = (0..h.graph.num_classes()).collect();
    let mut cases = 0;
    for x in c.g.vertices() {
        let mut avail = all_h_vertices(h);
        for y in c.g.neighbors(x) {
            if let Some(hy) = h.locate(y) {
                avail.set(h.graph.id(hy), false);
            }
        }
        let all_nonempty = classes
            .iter()
            .all(|&k| avail.intersection_count(h.graph.class_mask(k)) > 0);
        if !all_nonempty {
            continue;
        }
        if first_of_size(&h.graph, &classes, &avail, classes.len(), budget)?.is_none() {
            return fail(format!("removing N({x}) from every A_v leaves no transversal of H"));
        }
        cases += 1;
    }
    pass(cases)
}

fn vertex_joined_to_a_set(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    for x in &c.v_prime {
        let ok = c.rec.i.iter().any(|v| {
            c.same_component(v.part, x.part) && !c.a(v).is_empty() && c.joined(x, c.a(v))
        });
        if !ok {
            return fail(format!("{x} is completely joined to no A_v in its component"));
        }
    }
    pass(c.v_prime.len())
}

fn component_domination_count(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    for comp in &c.rec.forest.components {
        let j = comp.len();
        let vj = c.g.vertices_of_classes(comp);
        let ij = c.rec.i.intersection(&vj);
        if ij.len() != 2 * (j - 1) {
            return fail(format!("a component with {j} classes holds {} vertices of I", ij.len()));
        }
        if !c.g.dominates(&ij, &vj) {
            return fail(format!("a component with {j} classes is not dominated by its part of I"));
        }
        if vj.len() as i64 > c.delta * ij.len() as i64 {
            return fail(format!(
                "{} vertices dominated by {} vertices of degree at most {}",
                vj.len(),
                ij.len(),
                c.delta
            ));
        }
    }
    pass(c.rec.forest.components.len())
}

fn component_size_at_least_q(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let q = c.g.num_classes() / (c.rec.d + 1);
    if c.rec.forest.nodes.len() < q * (c.rec.d + 1) {
        return fail(format!("F_I has {} classes", c.rec.forest.nodes.len()));
    }
    if let Some(comp) = c.rec.forest.components.iter().find(|comp| comp.len() < q) {
        return fail(format!("a component of F_I has {} < {q} classes", comp.len()));
    }
    pass(c.rec.forest.components.len())
}

fn joined_pair_adjacent(c: &Ctx<'_>, _: &mut Budget) -> Result<LemmaOutcome, BudgetExhausted> {
    let mut cases = 0;
    for &(v, w) in c.matching() {
        for (p, q) in [(v, w), (w, v)] {
            let to_q: Vec<VertexRef> = c.v_prime.iter().filter(|&a| c.joined(a, c.a(q))).collect();
            let to_p: Vec<VertexRef> = c.v_prime.iter().filter(|&b| c.joined(b, c.a(p))).collect();
            for &a in &to_q {
                for &b in &to_p {
                    if !c.g.is_adjacent(a, b) {
                        return fail(format!("{a} joined to A_{q} and {b} joined to A_{p} are not adjacent"));
                    }
                    cases += 1;
                }
            }
        }
    }
    pass(cases)
}

fn is_edge_critical(c: &Ctx<'_>, budget: &mut Budget) -> Result<bool, BudgetExhausted> {
    let target = c.g.num_classes() - c.rec.d;
    for &(a, b) in c.g.edges() {
        let without = c.g.without_edge(a, b).expect("listed edge exists");
        if has_it_of_size(&without, target, budget)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn critical_union_complete_bipartite(
    c: &Ctx<'_>,
    budget: &mut Budget,
) -> Result<LemmaOutcome, BudgetExhausted> {
    if !is_edge_critical(c, budget)? {
        return Ok(LemmaOutcome::NotApplicable);
    }
    let mut seen = VertexSet::new();
    let mut parts = 0;
    for start in &c.v_prime {
        if seen.contains(&start) {
            continue;
        }
        let mut side = vec![(start, 0u8)];
        seen.insert(start);
        let mut k = 0;
        while k < side.len() {
            let (x, s) = side[k];
            for y in c.g.neighbors_in(x, &c.v_prime).iter() {
                if seen.insert(y) {
                    side.push((y, 1 - s));
                }
            }
            k += 1;
        }
        let left: VertexSet = side.iter().filter(|p| p.1 == 0).map(|p| p.0).collect();
        let right: VertexSet = side.iter().filter(|p| p.1 == 1).map(|p| p.0).collect();
        let comp = left.union(&right);
        let complete = c.g.induced_edges(&comp).len() == left.len() * right.len()
            && left.iter().all(|a| c.joined(a, &right));
        if right.is_empty() || !complete {
            return fail(format!("the component of {start} in G[V'] is not complete bipartite"));
        }
        parts += 1;
    }
    let expected = (c.t - c.d - 1) as usize;
    if parts != expected {
        return fail(format!("G[V'] has {parts} components, expected {expected}"));
    }
    pass(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, disjoint_union};
    use crate::imc::{extract_imc, FeasiblePair};
    use crate::solver::max_partial_it;

    fn report(g: &MultipartiteGraph, d: usize) -> LemmaReport {
        let seed = FeasiblePair::seed(g, VertexSet::new(), max_partial_it(g).witness);
        let rec = extract_imc(g, d, &seed, &mut Budget::unlimited()).unwrap();
        check_structure_lemmas(g, &rec, &mut Budget::unlimited())
    }

    fn assert_clean(r: &LemmaReport) {
        assert_eq!(r.failures().count(), 0, "{r}");
        assert!(r
            .entries
            .iter()
            .all(|e| e.outcome != LemmaOutcome::BudgetExhausted));
    }

    #[test]
    fn k44_passes_setup_ii_checks() {
        let r = report(&complete_bipartite(4, 4), 0);
        assert_eq!(r.level, SetupLevel::SetupII);
        assert_clean(&r);
        assert_eq!(r.get("a_sets_same_component"), Some(&LemmaOutcome::Pass { cases: 1 }));
        assert_eq!(r.get("vertex_joined_to_a_set"), Some(&LemmaOutcome::Pass { cases: 8 }));
        assert_eq!(r.get("h_transversals_are_imcs"), Some(&LemmaOutcome::Pass { cases: 16 }));
        assert_eq!(r.get("component_size_at_least_q"), Some(&LemmaOutcome::NotApplicable));
    }

    #[test]
    fn two_k44_blocks_with_defect_one() {
        let g = disjoint_union(&complete_bipartite(4, 4), &complete_bipartite(4, 4));
        let r = report(&g, 1);
        assert_eq!(r.level, SetupLevel::SetupII);
        assert_clean(&r);
        assert_eq!(r.passed(), 11);
    }

    #[test]
    fn below_every_threshold_only_unconditional_checks_run() {
        // Path 0.0 - 1.0 - 2.0 - 3.0 on four singleton classes, d = 1.
        let v = VertexRef::new;
        let g = MultipartiteGraph::from_edges(
            vec![1, 1, 1, 1],
            [(v(0, 0), v(1, 0)), (v(1, 0), v(2, 0)), (v(2, 0), v(3, 0))],
        )
        .unwrap();
        let r = report(&g, 1);
        assert_eq!(r.level, SetupLevel::None);
        assert_clean(&r);
        for e in &r.entries[2..] {
            assert_eq!(e.outcome, LemmaOutcome::NotApplicable, "{}", e.name);
        }
    }
}
