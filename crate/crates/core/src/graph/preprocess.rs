//! Cost-spread and horizon reduction for the graph problems.
//!
//! For a guessed most-expensive edge `f`: edges dearer than `f` are removed
//! (deleted for Steiner problems, contracted for cuts), edges cheaper than
//! `c_f / n²` are bought up front, days whose inflation exceeds the
//! remaining cost spread times `n²` are dropped, and the rest is thinned to
//! a doubling subsequence of inflations.

use super::{delete_or_contract, zero_edges, EdgeSet, ReduceMode, WeightedGraph};
use crate::error::{Error, Result};
use crate::model::{evaluate_thrifty, Schedule, Solution, StageMap, ThriftyPlan};
use crate::rational::{int, Rational};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreprocessKind {
    MinCut,
    SteinerTree,
    SteinerForest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub graph: WeightedGraph,
    /// Original vertex to vertex of `graph`.
    pub merge_map: Vec<usize>,
    pub merged_into_root: Vec<usize>,
    pub satisfied_pairs: Vec<usize>,
    pub schedule: Schedule,
    pub stages: StageMap,
    /// Cheap edges bought on day 0, at their original cost.
    pub prepaid: EdgeSet,
    pub removed: BTreeSet<usize>,
    /// Cost ratio of the edges left to decide (`None` when no positive edges remain).
    pub cost_spread: Option<Rational>,
}

pub fn preprocess_appendix_a(
    g: &WeightedGraph,
    schedule: &Schedule,
    kind: PreprocessKind,
    f_guess: usize,
) -> Result<Preprocessed> {
    let c_f = g.edge(f_guess).ok_or(Error::UnknownEdge(f_guess))?.cost.clone();
    let n = g.vertex_count() as i64;
    let n2 = int(n * n);

    let removed: BTreeSet<usize> = g.edges().iter().filter(|e| e.cost > c_f).map(|e| e.id).collect();
    let high_mode = match kind {
        PreprocessKind::MinCut => ReduceMode::Contract,
        _ => ReduceMode::Delete,
    };
    let reduced = delete_or_contract(g, &removed, high_mode)?;

    let low_bar = &c_f / &n2;
    let low: BTreeSet<usize> = reduced
        .graph
        .edges()
        .iter()
        .filter(|e| e.cost < low_bar)
        .map(|e| e.id)
        .collect();
    let prepaid = g.edge_set(low.iter().copied())?;
    let graph = match kind {
        PreprocessKind::MinCut => delete_or_contract(&reduced.graph, &low, ReduceMode::Delete)?.graph,
        _ => zero_edges(&reduced.graph, &low)?,
    };

    let undecided: Vec<&Rational> = graph
        .edges()
        .iter()
        .filter(|e| !low.contains(&e.id))
        .map(|e| &e.cost)
        .collect();
    let cost_spread = match (undecided.iter().max(), undecided.iter().min()) {
        (Some(&max), Some(&min)) if !min.is_zero() => Some(max / min),
        _ => None,
    };
    let mut alive: Vec<usize> = vec![0];
    if let Some(spread) = &cost_spread {
        let ceiling = &n2 * spread;
        alive.extend((1..=schedule.horizon()).filter(|&d| schedule.lambda(d) <= &ceiling));
    } else {
        alive.extend(1..=schedule.horizon());
    }
    let trimmed = schedule.restrict(&alive);
    let (merged, inner) = trimmed.merge_stages(&int(2));
    let kept: Vec<usize> = inner.kept.iter().map(|&p| alive[p]).collect();
    let stages = StageMap::new(kept, schedule.horizon());

    Ok(Preprocessed {
        graph,
        merge_map: reduced.merge_map,
        merged_into_root: reduced.merged_into_root,
        satisfied_pairs: reduced.satisfied_pairs,
        schedule: merged,
        stages,
        prepaid,
        removed,
        cost_spread,
    })
}

impl Preprocessed {
    /// Rewrites a plan solved on the reduced instance in terms of the
    /// original graph: original unit ids, original day numbering, and the
    /// prepaid edges added to the day-0 purchase.
    pub fn lift_plan(
        &self,
        inner: ThriftyPlan,
        original: &WeightedGraph,
        ground: &[usize],
        unit_of: impl Fn(usize) -> usize,
        f_guess: usize,
    ) -> Result<ThriftyPlan> {
        let mut residuals = BTreeMap::new();
        let mut completions = BTreeMap::new();
        let mut net = Vec::new();
        for &u in ground {
            let inner_unit = unit_of(u);
            let r = inner
                .residuals
                .get(&inner_unit)
                .ok_or(Error::MissingResidual(u))?;
            residuals.insert(u, r.clone());
            completions.insert(u, inner.completions.get(&inner_unit).cloned().unwrap_or_default());
            if inner.net.contains(&inner_unit) {
                net.push(u);
            }
        }
        let day0 = original.edge_set(self.prepaid.ids.iter().chain(inner.day0_purchase.iter()).copied())?;
        Ok(ThriftyPlan {
            critical_day: self.stages.original_day(inner.critical_day),
            net,
            day0_purchase: day0.to_vec(),
            day0_cost: day0.cost,
            residuals,
            completions,
            f_guess: Some(f_guess),
            ..inner
        })
    }
}

/// Runs `solve_reduced` for every guess of the most expensive edge and keeps
/// the lifted plan with the smallest worst case on the original instance.
/// Guesses for which `unit_of` cannot place some unit are skipped.
pub(crate) fn solve_over_f_guesses<U, S>(
    g: &WeightedGraph,
    schedule: &Schedule,
    kind: PreprocessKind,
    ground: &[usize],
    unit_of: U,
    mut solve_reduced: S,
) -> Result<Solution>
where
    U: Fn(&Preprocessed, usize) -> Option<usize>,
    S: FnMut(&Preprocessed) -> Result<Solution>,
{
    let mut best: Option<Solution> = None;
    for f in g.edges().iter().map(|e| e.id) {
        let p = preprocess_appendix_a(g, schedule, kind, f)?;
        if ground.iter().any(|&u| unit_of(&p, u).is_none()) {
            continue;
        }
        let inner = match solve_reduced(&p) {
            Ok(s) => s,
            Err(Error::Disconnected(..)) => continue,
            Err(e) => return Err(e),
        };
        let plan = p.lift_plan(inner.plan, g, ground, |u| unit_of(&p, u).expect("checked"), f)?;
        let report = evaluate_thrifty(&plan, schedule, ground)?;
        if best.as_ref().is_none_or(|b| report.robcov < b.report.robcov) {
            best = Some(Solution { plan, report });
        }
    }
    best.ok_or_else(|| Error::Unsupported("no edge guess yields a feasible reduced instance".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sched() -> Schedule {
        Schedule::new(vec![4, 3, 2, 1], vec![int(1), frac(3, 2), int(2), int(5)])
    }

    #[test]
    fn uniform_costs_only_thin_stages() {
        let g = WeightedGraph::new(4, vec![(0, 1, int(3)), (1, 2, int(3)), (2, 3, int(3))]).unwrap();
        let p = preprocess_appendix_a(&g, &sched(), PreprocessKind::SteinerTree, 0).unwrap();
        assert!(p.removed.is_empty());
        assert!(p.prepaid.ids.is_empty());
        assert_eq!(p.stages.kept, vec![0, 2, 3]);
        assert_eq!(p.schedule.inflations, vec![int(1), int(2), int(5)]);
        assert_eq!(p.cost_spread, Some(int(1)));
    }

    #[test]
    fn expensive_edge_above_guess_is_removed() {
        let n = 3i64;
        let g = WeightedGraph::new(3, vec![(0, 1, int(1)), (1, 2, int(n * n * 10))]).unwrap();
        let p = preprocess_appendix_a(
            &g,
            &Schedule::new(vec![3, 2], vec![int(1), int(1)]),
            PreprocessKind::SteinerTree,
            0,
        )
        .unwrap();
        assert_eq!(p.removed, [1].into());
        assert!(p.graph.edge(1).is_none());
    }

    #[test]
    fn cheap_edges_are_prepaid() {
        let g = WeightedGraph::new(3, vec![(0, 1, frac(1, 100)), (1, 2, int(9))]).unwrap();
        let s = Schedule::new(vec![3, 2], vec![int(1), int(1000)]);
        let p = preprocess_appendix_a(&g, &s, PreprocessKind::SteinerForest, 1).unwrap();
        assert_eq!(p.prepaid.to_vec(), vec![0]);
        assert_eq!(p.graph.edge(0).unwrap().cost, int(0));
        // spread 1, n² = 9: inflation 1000 is dropped
        assert_eq!(p.stages.kept, vec![0]);

        let rooted = g.with_root(0).unwrap();
        let p = preprocess_appendix_a(&rooted, &s, PreprocessKind::MinCut, 1).unwrap();
        assert!(p.graph.edge(0).is_none());
    }

    #[test]
    fn cut_contracts_high_edges() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(50)), (1, 2, int(4))])
            .unwrap()
            .with_root(0)
            .unwrap();
        let p = preprocess_appendix_a(
            &g,
            &Schedule::new(vec![2, 1], vec![int(1), int(2)]),
            PreprocessKind::MinCut,
            1,
        )
        .unwrap();
        assert_eq!(p.merged_into_root, vec![1]);
        assert_eq!(p.graph.vertex_count(), 2);
    }
}
