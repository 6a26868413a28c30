use super::{distance_table, sfnet_build, SfnetResult, BETA};
use crate::error::{Error, Result};
use crate::graph::{
    gw_steiner_forest, solve_over_f_guesses, zero_edges, PreprocessKind, ShortestPaths, WeightedGraph,
};
use crate::model::{
    best_over_guesses, guess_grid, trivial_solution, working_schedule, Schedule, Solution, SolveOptions,
    ThriftyPlan,
};
use crate::rational::{int, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

pub fn forest_opt_bounds(g: &WeightedGraph) -> Result<(Rational, Rational)> {
    let dist = distance_table(g);
    let mut lb = Rational::zero();
    for p in &g.pairs {
        let d = dist[p.s][p.t].clone().ok_or(Error::Disconnected(p.s, p.t))?;
        lb = lb.max(d);
    }
    let ub = gw_steiner_forest(g, &g.pairs)?.cost;
    Ok((lb, ub))
}

/// Plan for one guess, together with the net construction it used.
pub fn thrifty_forest_plan(
    g: &WeightedGraph,
    schedule: &Schedule,
    guess: &Rational,
    beta: &Rational,
) -> Result<(ThriftyPlan, SfnetResult)> {
    let critical_day = schedule.argmin_stage()?;
    let tau = schedule.threshold_tau(guess, beta)?;
    let gamma = int(2 * schedule.horizon() as i64) * &tau;
    let net = sfnet_build(g, &g.pairs, &gamma)?;
    let residual_graph = zero_edges(g, &net.e_alg.ids)?;
    let mut residuals = BTreeMap::new();
    let mut completions = BTreeMap::new();
    for p in &g.pairs {
        let paths = ShortestPaths::run(&residual_graph, &[p.s]);
        let d = paths.dist[p.t].clone().ok_or(Error::Disconnected(p.s, p.t))?;
        let path = paths
            .path_to(p.t)
            .expect("reachable")
            .into_iter()
            .filter(|id| !net.e_alg.ids.contains(id))
            .collect();
        residuals.insert(p.id, d);
        completions.insert(p.id, path);
    }
    let plan = ThriftyPlan {
        guess: guess.clone(),
        beta: beta.clone(),
        tau,
        critical_day,
        net: net.net.iter().copied().collect(),
        day0_purchase: net.e_alg.to_vec(),
        day0_cost: net.e_alg.cost.clone(),
        residuals,
        completions,
        conservative: true,
        f_guess: None,
    };
    Ok((plan, net))
}

pub fn solve_forest(g: &WeightedGraph, schedule: &Schedule, options: &SolveOptions) -> Result<Solution> {
    let ground = g.pair_ids();
    if schedule.final_k() == 0 || ground.is_empty() {
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
            PreprocessKind::SteinerForest,
            &ground,
            |_, i| Some(i),
            |p| solve_forest(&p.graph, &p.schedule, &plain),
        );
    }
    let (working, map) = working_schedule(schedule, options);
    let beta = options.beta_override.clone().unwrap_or_else(|| int(BETA));
    let guesses = match &options.guess {
        Some(g) => vec![g.clone()],
        None => {
            let (lb, ub) = forest_opt_bounds(g)?;
            guess_grid(&lb, &ub)
        }
    };
    best_over_guesses(&guesses, schedule, &ground, |guess| {
        let (mut plan, _) = thrifty_forest_plan(g, &working, guess, &beta)?;
        plan.critical_day = map.original_day(plan.critical_day);
        Ok(plan)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair_costs_its_distance() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(2)), (1, 2, int(3))])
            .unwrap()
            .with_pairs(vec![(0, 2)])
            .unwrap();
        for lambda in [int(1), int(3), int(10)] {
            let s = Schedule::new(vec![1, 1], vec![int(1), lambda]);
            assert_eq!(
                solve_forest(&g, &s, &SolveOptions::default())
                    .unwrap()
                    .report
                    .robcov,
                int(5)
            );
        }
    }

    #[test]
    fn coincident_endpoints_cost_nothing() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(4))])
            .unwrap()
            .with_pairs(vec![(0, 0), (1, 1)])
            .unwrap();
        let s = Schedule::new(vec![2, 1], vec![int(1), int(2)]);
        assert_eq!(
            solve_forest(&g, &s, &SolveOptions::default())
                .unwrap()
                .report
                .robcov,
            int(0)
        );
    }

    #[test]
    fn residuals_are_bounded_by_four_gamma() {
        let g = WeightedGraph::new(
            6,
            vec![
                (0, 1, int(4)),
                (1, 2, int(9)),
                (2, 3, int(1)),
                (3, 4, int(6)),
                (4, 5, int(2)),
                (5, 0, int(8)),
            ],
        )
        .unwrap()
        .with_pairs(vec![(0, 3), (1, 4), (2, 5)])
        .unwrap();
        let s = Schedule::new(vec![3, 2, 1], vec![int(1), int(2), int(4)]);
        for guess in [int(1), int(3), int(9), int(27)] {
            let (plan, net) = thrifty_forest_plan(&g, &s, &guess, &int(BETA)).unwrap();
            net.check(&g, &g.pairs).unwrap();
            let bound = int(4) * &net.gamma;
            assert!(plan.residuals.values().all(|r| r <= &bound));
        }
    }

    #[test]
    fn empty_final_requirement_is_trivial() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(4))])
            .unwrap()
            .with_pairs(vec![(0, 1)])
            .unwrap();
        let s = Schedule::new(vec![1, 0], vec![int(1), int(2)]);
        let solution = solve_forest(&g, &s, &SolveOptions::default()).unwrap();
        assert!(solution.plan.day0_purchase.is_empty());
        assert_eq!(solution.report.robcov, int(0));
    }
}
