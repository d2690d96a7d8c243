//! Bitset backtracking over partial transversals.
//!
//! Every search works on a set of *available* global vertex ids: picking a
//! vertex removes its neighbors and the rest of its class, skipping a class
//! removes the whole class.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::budget::{Budget, BudgetExhausted};
use crate::graph::MultipartiteGraph;

fn live_count(g: &MultipartiteGraph, avail: &FixedBitSet, part: usize) -> usize {
    avail.intersection_count(g.class_mask(part))
}

fn after_pick(g: &MultipartiteGraph, avail: &FixedBitSet, id: usize) -> FixedBitSet {
    let mut next = avail.clone();
    next.difference_with(g.neighbor_mask(id));
    next.difference_with(g.class_mask(g.part_of_id(id)));
    next
}

fn after_skip(g: &MultipartiteGraph, avail: &FixedBitSet, part: usize) -> FixedBitSet {
    let mut next = avail.clone();
    next.difference_with(g.class_mask(part));
    next
}

/// Size of the largest partial transversal using only `avail` vertices of the
/// given classes. Branches on the class with the fewest live candidates.
pub(crate) fn max_size(
    g: &MultipartiteGraph,
    classes: &[usize],
    avail: &FixedBitSet,
    budget: &mut Budget,
) -> Result<usize, BudgetExhausted> {
    fn rec(
        g: &MultipartiteGraph,
        avail: &FixedBitSet,
        remaining: &[usize],
        picks: usize,
        best: &mut usize,
        ceiling: usize,
        budget: &mut Budget,
    ) -> Result<(), BudgetExhausted> {
        budget.tick()?;
        *best = (*best).max(picks);
        let mut live: Vec<(usize, usize)> = remaining
            .iter()
            .map(|&c| (live_count(g, avail, c), c))
            .filter(|&(n, _)| n > 0)
            .collect();
        if picks + live.len() <= *best || *best == ceiling {
            return Ok(());
        }
        live.sort_unstable();
        let chosen = live[0].1;
        let others: Vec<usize> = live[1..].iter().map(|&(_, c)| c).collect();
        let mut candidates = avail.clone();
        candidates.intersect_with(g.class_mask(chosen));
        for id in candidates.ones() {
            let next = after_pick(g, avail, id);
            rec(g, &next, &others, picks + 1, best, ceiling, budget)?;
            if picks + 1 + others.len() <= *best {
                break;
            }
        }
        if picks + others.len() > *best {
            let next = after_skip(g, avail, chosen);
            rec(g, &next, &others, picks, best, ceiling, budget)?;
        }
        Ok(())
    }

    let mut best = 0;
    rec(g, avail, classes, 0, &mut best, classes.len(), budget)?;
    Ok(best)
}

/// First partial transversal of exactly `target` vertices in lexicographic
/// order of sorted pick lists. `classes` must be ascending.
pub(crate) fn first_of_size(
    g: &MultipartiteGraph,
    classes: &[usize],
    avail: &FixedBitSet,
    target: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, BudgetExhausted> {
    fn rec(
        g: &MultipartiteGraph,
        classes: &[usize],
        avail: &FixedBitSet,
        target: usize,
        picks: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Result<bool, BudgetExhausted> {
        budget.tick()?;
        if picks.len() == target {
            return Ok(true);
        }
        let live = classes
            .iter()
            .filter(|&&c| live_count(g, avail, c) > 0)
            .count();
        if picks.len() + live < target {
            return Ok(false);
        }
        let (&c, rest) = classes.split_first().expect("live classes remain");
        let mut candidates = avail.clone();
        candidates.intersect_with(g.class_mask(c));
        for id in candidates.ones() {
            picks.push(id);
            if rec(g, rest, &after_pick(g, avail, id), target, picks, budget)? {
                return Ok(true);
            }
            picks.pop();
        }
        rec(g, rest, &after_skip(g, avail, c), target, picks, budget)
    }

    let mut picks = Vec::with_capacity(target);
    if rec(g, classes, avail, target, &mut picks, budget)? {
        Ok(Some(picks))
    } else {
        Ok(None)
    }
}

/// Enumerates, in lexicographic order, transversals taking exactly one
/// `allowed` vertex from every class in `classes` (ascending), whose additive
/// cost stays strictly below a limit. `visit` may lower the limit and may
/// stop the enumeration.
pub(crate) struct CostEnumerator<'a, C> {
    pub g: &'a MultipartiteGraph,
    pub classes: &'a [usize],
    pub cost: C,
}

impl<'a, C: Fn(usize) -> usize> CostEnumerator<'a, C> {
    pub fn run<V>(
        &self,
        allowed: &FixedBitSet,
        limit: usize,
        budget: &mut Budget,
        mut visit: V,
    ) -> Result<(), BudgetExhausted>
    where
        V: FnMut(&[usize], usize, &mut usize) -> ControlFlow<()>,
    {
        let mut picks = Vec::with_capacity(self.classes.len());
        let mut limit = limit;
        self.rec(0, allowed, 0, &mut limit, &mut picks, budget, &mut visit)
            .map(|_| ())
    }

    #[allow(clippy::too_many_arguments)]
    fn rec<V>(
        &self,
        pos: usize,
        avail: &FixedBitSet,
        spent: usize,
        limit: &mut usize,
        picks: &mut Vec<usize>,
        budget: &mut Budget,
        visit: &mut V,
    ) -> Result<ControlFlow<()>, BudgetExhausted>
    where
        V: FnMut(&[usize], usize, &mut usize) -> ControlFlow<()>,
    {
        budget.tick()?;
        if spent >= *limit {
            return Ok(ControlFlow::Continue(()));
        }
        if pos == self.classes.len() {
            return Ok(visit(picks, spent, limit));
        }
        if self.classes[pos..]
            .iter()
            .any(|&c| live_count(self.g, avail, c) == 0)
        {
            return Ok(ControlFlow::Continue(()));
        }
        let c = self.classes[pos];
        let mut candidates = avail.clone();
        candidates.intersect_with(self.g.class_mask(c));
        for id in candidates.ones() {
            let step = spent + (self.cost)(id);
            if step >= *limit {
                continue;
            }
            picks.push(id);
            let flow = self.rec(
                pos + 1,
                &after_pick(self.g, avail, id),
                step,
                limit,
                picks,
                budget,
                visit,
            )?;
            picks.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}
