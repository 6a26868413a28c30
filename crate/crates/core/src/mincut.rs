//! Multistage robust minimum cut.
//!
//! Ground units are the non-root vertices. The net holds every vertex whose
//! own cut from the root exceeds `2Tτ`; it is separated on day 0 with a
//! single minimum cut. On the critical day each active vertex still
//! attached to the root gets its own minimum cut in the residual graph.

use crate::error::{Error, Result};
use crate::graph::{
    delete_or_contract, min_cut, solve_over_f_guesses, PreprocessKind, ReduceMode, WeightedGraph,
};
use crate::model::{
    best_over_guesses, guess_grid, trivial_solution, working_schedule, Schedule, Solution, SolveOptions,
    ThriftyPlan,
};
use crate::rational::{int, Rational};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

pub const BETA: i64 = 50;

fn root_of(g: &WeightedGraph) -> Result<usize> {
    g.root
        .ok_or_else(|| Error::InvalidInstance("min-cut instance needs a root".into()))
}

/// Cut value of every non-root vertex on its own.
pub fn singleton_cuts(g: &WeightedGraph) -> Result<BTreeMap<usize, Rational>> {
    let root = root_of(g)?;
    g.non_root_vertices()
        .into_iter()
        .map(|v| Ok((v, min_cut(g, root, &[v].into())?.0)))
        .collect()
}

/// Non-root vertices whose singleton cut value exceeds `threshold`.
pub fn build_net(g: &WeightedGraph, threshold: &Rational) -> Result<BTreeSet<usize>> {
    Ok(singleton_cuts(g)?
        .into_iter()
        .filter(|(_, value)| value > threshold)
        .map(|(v, _)| v)
        .collect())
}

pub fn opt_bounds(g: &WeightedGraph) -> Result<(Rational, Rational)> {
    let root = root_of(g)?;
    let lb = singleton_cuts(g)?
        .into_values()
        .max()
        .unwrap_or_else(Rational::zero);
    let everything: BTreeSet<usize> = g.non_root_vertices().into_iter().collect();
    let ub = min_cut(g, root, &everything)?.0;
    Ok((lb, ub))
}

pub fn thrifty_plan(
    g: &WeightedGraph,
    schedule: &Schedule,
    guess: &Rational,
    beta: &Rational,
) -> Result<ThriftyPlan> {
    let root = root_of(g)?;
    let critical_day = schedule.argmin_stage()?;
    let tau = schedule.threshold_tau(guess, beta)?;
    let threshold = int(2 * schedule.horizon() as i64) * &tau;
    let net = build_net(g, &threshold)?;
    let (day0_cost, day0) = min_cut(g, root, &net)?;
    let residual_graph = delete_or_contract(g, &day0.ids, ReduceMode::Delete)?.graph;
    let mut residuals = BTreeMap::new();
    let mut completions = BTreeMap::new();
    for v in g.non_root_vertices() {
        let (value, cut) = min_cut(&residual_graph, root, &[v].into())?;
        residuals.insert(v, value);
        completions.insert(v, cut.to_vec());
    }
    Ok(ThriftyPlan {
        guess: guess.clone(),
        beta: beta.clone(),
        tau,
        critical_day,
        net: net.into_iter().collect(),
        day0_purchase: day0.to_vec(),
        day0_cost,
        residuals,
        completions,
        conservative: true,
        f_guess: None,
    })
}

pub fn solve(g: &WeightedGraph, schedule: &Schedule, options: &SolveOptions) -> Result<Solution> {
    root_of(g)?;
    let ground = g.non_root_vertices();
    if schedule.final_k() == 0 {
        return Ok(trivial_solution(&ground, schedule));
    }
    if options.preprocess && !g.edges().is_empty() {
        let plain = SolveOptions {
            preprocess: false,
            merge_r: None,
            ..options.clone()
        };
        return solve_over_f_guesses(
            g,
            schedule,
            PreprocessKind::MinCut,
            &ground,
            |p, v| (!p.merged_into_root.contains(&v)).then(|| p.merge_map[v]),
            |p| solve(&p.graph, &p.schedule, &plain),
        );
    }
    let (working, map) = working_schedule(schedule, options);
    let beta = options.beta_override.clone().unwrap_or_else(|| int(BETA));
    let guesses = match &options.guess {
        Some(g) => vec![g.clone()],
        None => {
            let (lb, ub) = opt_bounds(g)?;
            guess_grid(&lb, &ub)
        }
    };
    best_over_guesses(&guesses, schedule, &ground, |guess| {
        let mut plan = thrifty_plan(g, &working, guess, &beta)?;
        plan.critical_day = map.original_day(plan.critical_day);
        Ok(plan)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ρ=0 with spokes to a=1 (10) and b=2 (1).
    fn two_spokes() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, int(10)), (0, 2, int(1))])
            .unwrap()
            .with_root(0)
            .unwrap()
    }

    #[test]
    fn net_examples() {
        let g = two_spokes();
        assert_eq!(build_net(&g, &int(6)).unwrap(), [1].into());
        assert_eq!(build_net(&g, &int(0)).unwrap(), [1, 2].into());
        assert!(build_net(&g, &int(1000)).unwrap().is_empty());
    }

    #[test]
    fn two_spokes_plan() {
        let g = two_spokes();
        let s = Schedule::new(vec![2, 1], vec![int(1), int(5)]);
        let plan = thrifty_plan(&g, &s, &int(11), &int(BETA)).unwrap();
        assert_eq!(plan.critical_day, 0);
        assert_eq!(plan.tau, int(275));
        assert!(plan.net.is_empty());
        let solution = solve(&g, &s, &SolveOptions::default()).unwrap();
        assert_eq!(solution.report.robcov, int(11));
        assert!(solution.report.conservative);
    }

    #[test]
    fn single_vertex_costs_its_edge() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(7))])
            .unwrap()
            .with_root(0)
            .unwrap();
        let s = Schedule::new(vec![1, 1], vec![int(1), int(3)]);
        let solution = solve(&g, &s, &SolveOptions::default()).unwrap();
        assert!(solution.report.robcov <= int(21));
        assert_eq!(solution.report.robcov, int(7));
    }

    #[test]
    fn free_or_absent_edges_cost_nothing() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(0)), (1, 2, int(0))])
            .unwrap()
            .with_root(0)
            .unwrap();
        let s = Schedule::new(vec![2, 1], vec![int(1), int(2)]);
        assert_eq!(
            solve(&g, &s, &SolveOptions::default()).unwrap().report.robcov,
            int(0)
        );

        let isolated = WeightedGraph::new(3, vec![(1, 2, int(4))])
            .unwrap()
            .with_root(0)
            .unwrap();
        assert_eq!(
            solve(&isolated, &s, &SolveOptions::default())
                .unwrap()
                .report
                .robcov,
            int(0)
        );
    }

    #[test]
    fn net_vertices_have_zero_residual() {
        let g = two_spokes();
        let s = Schedule::new(vec![2, 1], vec![int(1), int(5)]);
        let plan = thrifty_plan(&g, &s, &int(1), &int(1)).unwrap();
        for v in &plan.net {
            assert!(plan.residuals[v].is_zero());
        }
    }

    #[test]
    fn preprocessing_reports_edge_guess() {
        let g = two_spokes();
        let s = Schedule::new(vec![2, 1], vec![int(1), int(5)]);
        let options = SolveOptions {
            preprocess: true,
            ..SolveOptions::default()
        };
        let solution = solve(&g, &s, &options).unwrap();
        assert!(solution.plan.f_guess.is_some());
        assert_eq!(solution.report.robcov, int(11));
    }

    #[test]
    fn missing_root_is_rejected() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(1))]).unwrap();
        let s = Schedule::new(vec![1, 1], vec![int(1), int(1)]);
        assert!(solve(&g, &s, &SolveOptions::default()).is_err());
    }
}
