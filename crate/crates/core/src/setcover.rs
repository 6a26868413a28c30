//! Multistage robust set cover.
//!
//! The net is every element whose cheapest covering set costs at least
//! `τ`; it is covered greedily on day 0. On the critical day each active
//! element outside the cover buys its own cheapest set.

use crate::error::{Error, Result};
use crate::model::{
    best_over_guesses, guess_grid, trivial_solution, working_schedule, Schedule, Solution, SolveOptions,
    ThriftyPlan,
};
use crate::rational::{int, ln_upper, Rational};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSet {
    pub members: Vec<usize>,
    pub cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    universe_size: usize,
    sets: Vec<WeightedSet>,
    minset_id: Vec<usize>,
}

impl SetSystem {
    /// Elements are `0..universe_size`; set ids are positions in `sets`.
    pub fn new(universe_size: usize, sets: Vec<WeightedSet>) -> Result<Self> {
        let mut minset_id: Vec<Option<usize>> = vec![None; universe_size];
        for (id, set) in sets.iter().enumerate() {
            if set.cost < Rational::zero() {
                return Err(Error::InvalidInstance(format!("set {id} has negative cost")));
            }
            for &e in &set.members {
                let slot = minset_id.get_mut(e).ok_or_else(|| {
                    Error::InvalidInstance(format!("set {id} names element {e} outside the universe"))
                })?;
                match slot {
                    Some(best) if sets[*best].cost <= set.cost => {}
                    _ => *slot = Some(id),
                }
            }
        }
        let minset_id = minset_id
            .into_iter()
            .enumerate()
            .map(|(e, id)| id.ok_or_else(|| Error::InvalidInstance(format!("element {e} is in no set"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            universe_size,
            sets,
            minset_id,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[WeightedSet] {
        &self.sets
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.universe_size).collect()
    }

    pub fn minset_id(&self, e: usize) -> usize {
        self.minset_id[e]
    }

    pub fn minset_cost(&self, e: usize) -> &Rational {
        &self.sets[self.minset_id[e]].cost
    }

    pub fn cost_of(&self, ids: &[usize]) -> Rational {
        let unique: BTreeSet<usize> = ids.iter().copied().collect();
        unique.iter().map(|&id| &self.sets[id].cost).sum()
    }

    pub fn covered_by(&self, ids: &[usize]) -> BTreeSet<usize> {
        ids.iter()
            .flat_map(|&id| self.sets[id].members.iter().copied())
            .collect()
    }

    /// Classic greedy: repeatedly take the set with the most uncovered
    /// targets per unit cost (ties to the smallest id).
    pub fn greedy_cover(&self, targets: &BTreeSet<usize>) -> (Vec<usize>, Rational) {
        let mut uncovered = targets.clone();
        let mut chosen = Vec::new();
        let mut cost = Rational::zero();
        while !uncovered.is_empty() {
            let mut best: Option<(usize, usize)> = None;
            for (id, set) in self.sets.iter().enumerate() {
                let gain = set.members.iter().filter(|e| uncovered.contains(e)).count();
                if gain == 0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((best_id, best_gain)) => {
                        ratio_greater(gain, &set.cost, best_gain, &self.sets[best_id].cost)
                    }
                };
                if better {
                    best = Some((id, gain));
                }
            }
            let (id, _) = best.expect("every element lies in some set");
            for e in &self.sets[id].members {
                uncovered.remove(e);
            }
            cost += &self.sets[id].cost;
            chosen.push(id);
        }
        (chosen, cost)
    }

    /// Elements whose cheapest covering set costs at least `tau`.
    pub fn build_net(&self, tau: &Rational) -> BTreeSet<usize> {
        (0..self.universe_size)
            .filter(|&e| self.minset_cost(e) >= tau)
            .collect()
    }

    /// `β = 36 ln m`, rounded up to six decimals.
    pub fn default_beta(&self) -> Rational {
        int(36) * ln_upper(self.sets.len())
    }

    pub fn opt_bounds(&self) -> (Rational, Rational) {
        let lb = (0..self.universe_size)
            .map(|e| self.minset_cost(e).clone())
            .max()
            .unwrap_or_else(Rational::zero);
        let ub = self.greedy_cover(&self.elements().into_iter().collect()).1;
        (lb, ub)
    }

    pub fn thrifty_plan(
        &self,
        schedule: &Schedule,
        guess: &Rational,
        beta: &Rational,
    ) -> Result<ThriftyPlan> {
        let critical_day = schedule.argmin_stage()?;
        let tau = schedule.threshold_tau(guess, beta)?;
        let net = self.build_net(&tau);
        let (day0_purchase, day0_cost) = self.greedy_cover(&net);
        let covered = self.covered_by(&day0_purchase);
        let mut residuals = BTreeMap::new();
        let mut completions = BTreeMap::new();
        let mut used = BTreeSet::new();
        let mut shared = false;
        for e in 0..self.universe_size {
            if covered.contains(&e) {
                residuals.insert(e, Rational::zero());
                completions.insert(e, Vec::new());
            } else {
                let id = self.minset_id(e);
                let cost = self.minset_cost(e).clone();
                if !cost.is_zero() && !used.insert(id) {
                    shared = true;
                }
                residuals.insert(e, cost);
                completions.insert(e, vec![id]);
            }
        }
        Ok(ThriftyPlan {
            guess: guess.clone(),
            beta: beta.clone(),
            tau,
            critical_day,
            net: net.into_iter().collect(),
            day0_purchase,
            day0_cost,
            residuals,
            completions,
            conservative: shared,
            f_guess: None,
        })
    }

    pub fn solve(&self, schedule: &Schedule, options: &SolveOptions) -> Result<Solution> {
        let ground = self.elements();
        if schedule.final_k() == 0 {
            return Ok(trivial_solution(&ground, schedule));
        }
        let (working, map) = working_schedule(schedule, options);
        let beta = options
            .beta_override
            .clone()
            .unwrap_or_else(|| self.default_beta());
        let guesses = match &options.guess {
            Some(g) => vec![g.clone()],
            None => {
                let (lb, ub) = self.opt_bounds();
                guess_grid(&lb, &ub)
            }
        };
        best_over_guesses(&guesses, schedule, &ground, |guess| {
            let mut plan = self.thrifty_plan(&working, guess, &beta)?;
            plan.critical_day = map.original_day(plan.critical_day);
            Ok(plan)
        })
    }
}

/// `a / ca > b / cb`, where a zero cost means an infinite ratio.
fn ratio_greater(a: usize, ca: &Rational, b: usize, cb: &Rational) -> bool {
    match (ca.is_zero(), cb.is_zero()) {
        (true, true) => a > b,
        (true, false) => true,
        (false, true) => false,
        (false, false) => int(a as i64) * cb > int(b as i64) * ca,
    }
}
