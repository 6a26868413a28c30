use super::{distance_table, require_connected, BETA};
use crate::error::{Error, Result};
use crate::graph::{
    mst_steiner_tree, solve_over_f_guesses, zero_edges, PreprocessKind, ShortestPaths, WeightedGraph,
};
use crate::model::{
    best_over_guesses, guess_grid, trivial_solution, working_schedule, Schedule, Solution, SolveOptions,
    ThriftyPlan,
};
use crate::rational::{int, Rational};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Greedy packing by increasing vertex id: a vertex joins when it is
/// farther than `radius` from every member so far.
pub fn ball_packing_net(g: &WeightedGraph, radius: &Rational) -> BTreeSet<usize> {
    let dist = distance_table(g);
    let mut net: BTreeSet<usize> = BTreeSet::new();
    for v in g.vertices() {
        let far = net
            .iter()
            .all(|&w| dist[w][v].as_ref().is_none_or(|d| d > radius));
        if far {
            net.insert(v);
        }
    }
    net
}

pub fn tree_opt_bounds(g: &WeightedGraph) -> Result<(Rational, Rational)> {
    require_connected(g)?;
    let lb = distance_table(g)
        .into_iter()
        .flatten()
        .flatten()
        .max()
        .unwrap_or_else(Rational::zero);
    let ub = mst_steiner_tree(g, &g.vertices().into_iter().collect())?.cost;
    Ok((lb, ub))
}

pub fn thrifty_tree_plan(
    g: &WeightedGraph,
    schedule: &Schedule,
    guess: &Rational,
    beta: &Rational,
) -> Result<ThriftyPlan> {
    if schedule.final_k() <= 1 {
        return Err(Error::TrivialInstance);
    }
    require_connected(g)?;
    let critical_day = schedule.argmin_stage()?;
    let tau = schedule.threshold_tau(guess, beta)?;
    let radius = int(4 * schedule.horizon() as i64) * &tau;
    let net = ball_packing_net(g, &radius);
    let day0 = mst_steiner_tree(g, &net)?;
    let residual_graph = zero_edges(g, &day0.ids)?;
    let sources: Vec<usize> = net.iter().copied().collect();
    let paths = ShortestPaths::run(&residual_graph, &sources);
    let mut residuals = BTreeMap::new();
    let mut completions = BTreeMap::new();
    for v in g.vertices() {
        let d = paths.dist[v].clone().ok_or(Error::Disconnected(sources[0], v))?;
        let path: Vec<usize> = paths
            .path_to(v)
            .expect("reachable")
            .into_iter()
            .filter(|id| !day0.ids.contains(id))
            .collect();
        residuals.insert(v, d);
        completions.insert(v, path);
    }
    Ok(ThriftyPlan {
        guess: guess.clone(),
        beta: beta.clone(),
        tau,
        critical_day,
        net: sources,
        day0_purchase: day0.to_vec(),
        day0_cost: day0.cost,
        residuals,
        completions,
        conservative: true,
        f_guess: None,
    })
}

pub fn solve_tree(g: &WeightedGraph, schedule: &Schedule, options: &SolveOptions) -> Result<Solution> {
    let ground = g.vertices();
    if schedule.final_k() <= 1 {
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
            PreprocessKind::SteinerTree,
            &ground,
            |p, v| Some(p.merge_map[v]),
            |p| solve_tree(&p.graph, &p.schedule, &plain),
        );
    }
    let (working, map) = working_schedule(schedule, options);
    let beta = options.beta_override.clone().unwrap_or_else(|| int(BETA));
    let guesses = match &options.guess {
        Some(g) => vec![g.clone()],
        None => {
            let (lb, ub) = tree_opt_bounds(g)?;
            guess_grid(&lb, &ub)
        }
    };
    best_over_guesses(&guesses, schedule, &ground, |guess| {
        let mut plan = thrifty_tree_plan(g, &working, guess, &beta)?;
        plan.critical_day = map.original_day(plan.critical_day);
        Ok(plan)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, int(10)), (1, 2, int(10))]).unwrap()
    }

    #[test]
    fn packing_examples() {
        assert_eq!(ball_packing_net(&path(), &int(5)), [0, 1, 2].into());
        assert_eq!(ball_packing_net(&path(), &int(15)), [0, 2].into());
        assert_eq!(ball_packing_net(&path(), &int(0)), [0, 1, 2].into());
        assert_eq!(ball_packing_net(&path(), &int(25)), [0].into());
    }

    #[test]
    fn single_edge_costs_its_edge() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(6))]).unwrap();
        let s = Schedule::new(vec![2, 2], vec![int(1), int(3)]);
        let solution = solve_tree(&g, &s, &SolveOptions::default()).unwrap();
        assert_eq!(solution.report.robcov, int(6));
        assert_eq!(tree_opt_bounds(&g).unwrap(), (int(6), int(6)));
    }

    #[test]
    fn free_edges_cost_nothing() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(0)), (1, 2, int(0))]).unwrap();
        let s = Schedule::new(vec![3, 2], vec![int(1), int(2)]);
        assert_eq!(
            solve_tree(&g, &s, &SolveOptions::default())
                .unwrap()
                .report
                .robcov,
            int(0)
        );
    }

    #[test]
    fn residuals_stay_within_the_packing_radius() {
        let g = WeightedGraph::new(
            5,
            vec![
                (0, 1, int(3)),
                (1, 2, int(4)),
                (2, 3, int(1)),
                (3, 4, int(7)),
                (0, 4, int(2)),
            ],
        )
        .unwrap();
        let s = Schedule::new(vec![5, 3, 2], vec![int(1), int(2), int(3)]);
        for guess in [int(1), int(4), int(16)] {
            let plan = thrifty_tree_plan(&g, &s, &guess, &int(BETA)).unwrap();
            let radius = int(8) * &plan.tau;
            assert!(!plan.net.is_empty());
            for r in plan.residuals.values() {
                assert!(r <= &radius);
            }
        }
    }

    #[test]
    fn small_final_requirement_is_trivial() {
        let s = Schedule::new(vec![3, 1], vec![int(1), int(2)]);
        assert_eq!(
            thrifty_tree_plan(&path(), &s, &int(1), &int(1)),
            Err(Error::TrivialInstance)
        );
        assert_eq!(
            solve_tree(&path(), &s, &SolveOptions::default())
                .unwrap()
                .report
                .robcov,
            int(0)
        );
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(1))]).unwrap();
        let s = Schedule::new(vec![3, 2], vec![int(1), int(2)]);
        assert!(matches!(
            solve_tree(&g, &s, &SolveOptions::default()),
            Err(Error::Disconnected(..))
        ));
    }
}
