//! Worst case of a given strategy over every scenario sequence.

use super::game::{bits, full, Game, Mask};
use super::minimax::Adversary;
use super::SizeLimits;
use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::model::{Schedule, ThriftyPlan};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::HashMap;

/// A strategy that decides from the current state. Masks index the game's
/// unit and action positions.
pub trait Strategy {
    fn act(&self, game: &Game, day: usize, active: Mask, owned: Mask) -> Mask;
}

/// Executes a thrifty plan: the day-0 purchase, then on the critical day the
/// completions of every still-active unit.
#[derive(Debug, Clone)]
pub struct PlanStrategy {
    day0: Mask,
    critical_day: usize,
    completions: Vec<Mask>,
}

impl PlanStrategy {
    pub fn new(game: &Game, plan: &ThriftyPlan, ground: &[usize]) -> Result<Self> {
        let mut completions = Vec::with_capacity(ground.len());
        for u in ground {
            let ids = plan.completions.get(u).ok_or(Error::MissingResidual(*u))?;
            completions.push(game.action_mask(ids)?);
        }
        Ok(Self {
            day0: game.action_mask(&plan.day0_purchase)?,
            critical_day: plan.critical_day,
            completions,
        })
    }
}

impl Strategy for PlanStrategy {
    fn act(&self, _game: &Game, day: usize, active: Mask, _owned: Mask) -> Mask {
        let mut buy = if day == 0 { self.day0 } else { 0 };
        if day == self.critical_day {
            buy |= bits(active).fold(0, |m, u| m | self.completions[u]);
        }
        buy
    }
}

struct Evaluator<'a, S: Strategy> {
    game: &'a Game,
    schedule: &'a Schedule,
    adversary: Adversary,
    strategy: &'a S,
    memo: HashMap<(usize, Mask, Mask), Option<Rational>>,
}

impl<S: Strategy> Evaluator<'_, S> {
    /// Worst remaining cost, `None` when some line ends unsatisfied.
    fn worst(&mut self, day: usize, active: Mask, owned: Mask) -> Option<Rational> {
        if let Some(v) = self.memo.get(&(day, active, owned)) {
            return v.clone();
        }
        let buy = self.strategy.act(self.game, day, active, owned) & !owned;
        let spend = self.schedule.lambda(day) * self.game.cost(buy);
        let owned_next = owned | buy;
        let result = if day == self.schedule.horizon() {
            self.game.satisfied(owned_next, active).then_some(spend)
        } else {
            let mut worst = Rational::zero();
            let mut feasible = true;
            for next in self.adversary.moves(day + 1, active, false) {
                match self.worst(day + 1, next, owned_next) {
                    Some(v) => worst = worst.max(v),
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            feasible.then(|| spend + worst)
        };
        self.memo.insert((day, active, owned), result.clone());
        result
    }
}

/// Exact worst case of `strategy`; `Infeasible` if some scenario sequence
/// ends with an unmet requirement.
pub fn evaluate_strategy<S: Strategy>(
    instance: &ProblemInstance,
    strategy: &S,
    limits: &SizeLimits,
) -> Result<Rational> {
    let game = Game::from_problem(&instance.problem)?;
    evaluate_in_game(&game, instance, strategy, limits)
}

pub fn evaluate_in_game<S: Strategy>(
    game: &Game,
    instance: &ProblemInstance,
    strategy: &S,
    limits: &SizeLimits,
) -> Result<Rational> {
    limits.check(
        game.unit_count(),
        game.action_count(),
        instance.schedule.horizon(),
    )?;
    let mut evaluator = Evaluator {
        game,
        schedule: &instance.schedule,
        adversary: Adversary::new(game, &instance.schedule, &instance.uncertainty)?,
        strategy,
        memo: HashMap::new(),
    };
    evaluator
        .worst(0, full(game.unit_count()), 0)
        .ok_or(Error::Infeasible)
}

/// Realized worst case of a thrifty plan, with shared purchases paid once.
pub fn exhaustive_robcov(
    instance: &ProblemInstance,
    plan: &ThriftyPlan,
    limits: &SizeLimits,
) -> Result<Rational> {
    let game = Game::from_problem(&instance.problem)?;
    let strategy = PlanStrategy::new(&game, plan, &instance.ground_units())?;
    evaluate_in_game(&game, instance, &strategy, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::instance::Problem;
    use crate::model::{evaluate_thrifty, SolveOptions};
    use crate::rational::int;

    fn spokes() -> ProblemInstance {
        let g = WeightedGraph::new(3, vec![(0, 1, int(10)), (0, 2, int(1))])
            .unwrap()
            .with_root(0)
            .unwrap();
        ProblemInstance::cardinality(
            Problem::MinCut(g),
            Schedule::new(vec![2, 1], vec![int(1), int(5)]),
        )
        .unwrap()
    }

    #[test]
    fn empty_residuals_cost_the_day0_purchase() {
        let inst = spokes();
        let mut plan = ThriftyPlan::empty(&inst.ground_units(), &inst.schedule);
        plan.day0_purchase = vec![0, 1];
        plan.day0_cost = int(11);
        assert_eq!(
            exhaustive_robcov(&inst, &plan, &SizeLimits::default()).unwrap(),
            int(11)
        );
    }

    #[test]
    fn doing_nothing_is_infeasible() {
        let inst = spokes();
        let plan = ThriftyPlan::empty(&inst.ground_units(), &inst.schedule);
        assert_eq!(
            exhaustive_robcov(&inst, &plan, &SizeLimits::default()),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn solver_plan_is_bounded_by_its_report() {
        let inst = spokes();
        let solution = inst.solve(&SolveOptions::default()).unwrap();
        let exact = exhaustive_robcov(&inst, &solution.plan, &SizeLimits::default()).unwrap();
        let report = evaluate_thrifty(&solution.plan, &inst.schedule, &inst.ground_units()).unwrap();
        assert!(exact <= report.robcov);
        assert_eq!(exact, int(11));
    }
}
