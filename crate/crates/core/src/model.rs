//! The multistage revelation model shared by every solver.
//!
//! A [`Schedule`] fixes, for days `0..=T`, how many ground units the
//! adversary may keep alive (`k_j`) and how expensive actions are on that
//! day (`λ_j`). A thrifty plan buys on day 0 and on one critical day only;
//! [`evaluate_thrifty`] computes its worst case in closed form.

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub cardinalities: Vec<usize>,
    pub inflations: Vec<Rational>,
}

impl Schedule {
    pub fn new(cardinalities: Vec<usize>, inflations: Vec<Rational>) -> Self {
        Self {
            cardinalities,
            inflations,
        }
    }

    pub fn horizon(&self) -> usize {
        self.cardinalities.len().saturating_sub(1)
    }

    pub fn k(&self, day: usize) -> usize {
        self.cardinalities[day]
    }

    pub fn lambda(&self, day: usize) -> &Rational {
        &self.inflations[day]
    }

    pub fn final_k(&self) -> usize {
        *self.cardinalities.last().unwrap_or(&0)
    }

    pub fn validate(&self, ground_size: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedSchedule(msg));
        if self.cardinalities.is_empty() {
            return bad("schedule has no days".into());
        }
        if self.cardinalities.len() != self.inflations.len() {
            return bad(format!(
                "{} cardinalities but {} inflations",
                self.cardinalities.len(),
                self.inflations.len()
            ));
        }
        if !self.inflations[0].is_one() {
            return bad("inflation on day 0 must be 1".into());
        }
        if self.cardinalities[0] != ground_size {
            return bad(format!(
                "k_0 = {} but the ground set has {} units",
                self.cardinalities[0], ground_size
            ));
        }
        for day in 1..self.cardinalities.len() {
            if self.inflations[day] < self.inflations[day - 1] {
                return bad(format!("inflations not nondecreasing at day {day}"));
            }
            if self.cardinalities[day] > self.cardinalities[day - 1] {
                return bad(format!("cardinalities not nonincreasing at day {day}"));
            }
        }
        Ok(())
    }

    /// Sub-schedule on the given original days (day 0 must be first).
    pub fn restrict(&self, days: &[usize]) -> Schedule {
        Schedule {
            cardinalities: days.iter().map(|&d| self.cardinalities[d]).collect(),
            inflations: days.iter().map(|&d| self.inflations[d].clone()).collect(),
        }
    }

    /// Smallest day minimizing `λ_j k_j`.
    pub fn argmin_stage(&self) -> Result<usize> {
        if self.final_k() == 0 {
            return Err(Error::TrivialInstance);
        }
        let mut best = 0;
        let mut best_product = self.product(0);
        for day in 1..=self.horizon() {
            let product = self.product(day);
            if product < best_product {
                best = day;
                best_product = product;
            }
        }
        Ok(best)
    }

    fn product(&self, day: usize) -> Rational {
        &self.inflations[day] * int(self.cardinalities[day] as i64)
    }

    /// `β · max_j guess / (λ_j k_j)`.
    pub fn threshold_tau(&self, guess: &Rational, beta: &Rational) -> Result<Rational> {
        if self.cardinalities.contains(&0) {
            return Err(Error::TrivialInstance);
        }
        let smallest = (0..=self.horizon())
            .map(|day| self.product(day))
            .min()
            .expect("schedule has at least one day");
        Ok(beta * guess / smallest)
    }

    /// Keeps the greedy subsequence of days whose inflation grows by a
    /// factor of at least `r` over the previously kept day.
    pub fn merge_stages(&self, r: &Rational) -> (Schedule, StageMap) {
        let mut kept = vec![0];
        for day in 1..=self.horizon() {
            let last = *kept.last().unwrap();
            if self.inflations[day] >= r * &self.inflations[last] {
                kept.push(day);
            }
        }
        let map = StageMap::new(kept, self.horizon());
        (self.restrict(&map.kept), map)
    }
}

/// Relates days of a reduced schedule to the original numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageMap {
    /// Original day of each kept position.
    pub kept: Vec<usize>,
    /// For each original day, the position of the latest kept day `<=` it.
    pub latest_kept: Vec<usize>,
}

impl StageMap {
    pub fn new(kept: Vec<usize>, horizon: usize) -> Self {
        let mut latest_kept = Vec::with_capacity(horizon + 1);
        let mut position = 0;
        for day in 0..=horizon {
            while position + 1 < kept.len() && kept[position + 1] <= day {
                position += 1;
            }
            latest_kept.push(position);
        }
        Self { kept, latest_kept }
    }

    pub fn identity(horizon: usize) -> Self {
        Self::new((0..=horizon).collect(), horizon)
    }

    pub fn original_day(&self, position: usize) -> usize {
        self.kept[position]
    }
}

/// How the adversary's revelations are constrained.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum UncertaintySpec {
    /// `|A_i| = k_i`.
    #[default]
    Cardinality,
    /// `|A_i ∩ P_i| <= k_i`; `parts[i - 1]` is `P_i`.
    SubsetKRobust { parts: Vec<Vec<usize>> },
}

impl UncertaintySpec {
    pub fn validate(&self, schedule: &Schedule, ground: &[usize]) -> Result<()> {
        let UncertaintySpec::SubsetKRobust { parts } = self else {
            return Ok(());
        };
        if parts.len() != schedule.horizon() {
            return Err(Error::InvalidInstance(format!(
                "subset uncertainty needs {} parts, got {}",
                schedule.horizon(),
                parts.len()
            )));
        }
        let ground: BTreeSet<usize> = ground.iter().copied().collect();
        for (i, part) in parts.iter().enumerate() {
            if let Some(unit) = part.iter().find(|u| !ground.contains(u)) {
                return Err(Error::InvalidInstance(format!(
                    "part {} names unknown unit {unit}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// A concrete adversary play `A_1..A_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSequence {
    pub revelations: Vec<BTreeSet<usize>>,
}

impl ScenarioSequence {
    /// `Â_j = ∩_{i<=j} A_i` for `j = 0..=T`, with `Â_0` the whole ground set.
    pub fn actives(&self, ground: &[usize]) -> Vec<BTreeSet<usize>> {
        let mut current: BTreeSet<usize> = ground.iter().copied().collect();
        let mut out = vec![current.clone()];
        for revealed in &self.revelations {
            current = current.intersection(revealed).copied().collect();
            out.push(current.clone());
        }
        out
    }

    pub fn is_admissible(&self, schedule: &Schedule, uncertainty: &UncertaintySpec) -> bool {
        if self.revelations.len() != schedule.horizon() {
            return false;
        }
        self.revelations.iter().enumerate().all(|(i, revealed)| {
            let k = schedule.k(i + 1);
            match uncertainty {
                UncertaintySpec::Cardinality => revealed.len() == k,
                UncertaintySpec::SubsetKRobust { parts } => {
                    parts[i].iter().filter(|u| revealed.contains(u)).count() <= k
                }
            }
        })
    }
}

/// A two-stage plan: buy on day 0 and complete on the critical day.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThriftyPlan {
    pub guess: Rational,
    pub beta: Rational,
    pub tau: Rational,
    pub critical_day: usize,
    pub net: Vec<usize>,
    /// Set ids or edge ids bought on day 0.
    pub day0_purchase: Vec<usize>,
    pub day0_cost: Rational,
    /// Worst per-unit day-`j*` cost (before inflation).
    pub residuals: BTreeMap<usize, Rational>,
    /// Actions bought on day `j*` for each unit still active then.
    pub completions: BTreeMap<usize, Vec<usize>>,
    /// True when the top-k residual sum only upper-bounds the realized cost.
    pub conservative: bool,
    /// Appendix-style preprocessing: the guessed most expensive edge.
    pub f_guess: Option<usize>,
}

impl ThriftyPlan {
    /// The do-nothing plan used when the final requirement is empty.
    pub fn empty(ground: &[usize], schedule: &Schedule) -> Self {
        Self {
            guess: Rational::zero(),
            beta: Rational::zero(),
            tau: Rational::zero(),
            critical_day: schedule.horizon(),
            net: Vec::new(),
            day0_purchase: Vec::new(),
            day0_cost: Rational::zero(),
            residuals: ground.iter().map(|&u| (u, Rational::zero())).collect(),
            completions: ground.iter().map(|&u| (u, Vec::new())).collect(),
            conservative: false,
            f_guess: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub day0_cost: Rational,
    pub worst_day_jstar_cost: Rational,
    pub robcov: Rational,
    pub witness: Vec<usize>,
    pub conservative: bool,
}

/// Closed-form worst case: `day0 + λ_{j*} · (sum of the k_{j*} largest residuals)`.
pub fn evaluate_thrifty(plan: &ThriftyPlan, schedule: &Schedule, ground: &[usize]) -> Result<CostReport> {
    if let Some(&missing) = ground.iter().find(|u| !plan.residuals.contains_key(u)) {
        return Err(Error::MissingResidual(missing));
    }
    let mut ranked: Vec<(&Rational, usize)> = ground
        .iter()
        .map(|&u| (&plan.residuals[&u], u))
        .filter(|(r, _)| !r.is_zero())
        .collect();
    ranked.sort_by(|a, b| b.0.cmp(a.0).then(a.1.cmp(&b.1)));
    ranked.truncate(schedule.k(plan.critical_day));
    let sum: Rational = ranked.iter().map(|(r, _)| *r).sum();
    let worst = schedule.lambda(plan.critical_day) * sum;
    Ok(CostReport {
        day0_cost: plan.day0_cost.clone(),
        robcov: &plan.day0_cost + &worst,
        worst_day_jstar_cost: worst,
        witness: ranked.into_iter().map(|(_, u)| u).collect(),
        conservative: plan.conservative,
    })
}

/// Geometric guesses `lb, 2lb, 4lb, ...` capped by and including `ub`.
pub fn guess_grid(lb: &Rational, ub: &Rational) -> Vec<Rational> {
    if ub.is_zero() {
        return vec![Rational::one()];
    }
    let mut current = if lb.is_zero() { ub.clone() } else { lb.clone() };
    let mut grid = Vec::new();
    while &current < ub {
        grid.push(current.clone());
        current = &current + &current;
    }
    grid.push(ub.clone());
    grid
}

/// Knobs shared by all solvers; defaults reproduce the published algorithms.
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub beta_override: Option<Rational>,
    pub guess: Option<Rational>,
    pub merge_r: Option<Rational>,
    pub preprocess: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub plan: ThriftyPlan,
    pub report: CostReport,
}

/// Runs `plan_for` over the guesses and keeps the cheapest evaluated plan
/// (ties go to the smaller guess).
pub(crate) fn best_over_guesses<F>(
    guesses: &[Rational],
    schedule: &Schedule,
    ground: &[usize],
    mut plan_for: F,
) -> Result<Solution>
where
    F: FnMut(&Rational) -> Result<ThriftyPlan>,
{
    let mut best: Option<Solution> = None;
    for guess in guesses {
        let plan = plan_for(guess)?;
        let report = evaluate_thrifty(&plan, schedule, ground)?;
        if best.as_ref().is_none_or(|b| report.robcov < b.report.robcov) {
            best = Some(Solution { plan, report });
        }
    }
    best.ok_or(Error::TrivialInstance)
}

/// Applies the optional stage merge, returning the working schedule and
/// how its days map back.
pub(crate) fn working_schedule(schedule: &Schedule, options: &SolveOptions) -> (Schedule, StageMap) {
    match &options.merge_r {
        Some(r) => schedule.merge_stages(r),
        None => (schedule.clone(), StageMap::identity(schedule.horizon())),
    }
}

pub(crate) fn trivial_solution(ground: &[usize], schedule: &Schedule) -> Solution {
    let plan = ThriftyPlan::empty(ground, schedule);
    let report = evaluate_thrifty(&plan, schedule, ground).expect("empty plan covers ground");
    Solution { plan, report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sched(k: &[usize], lambda: &[Rational]) -> Schedule {
        Schedule::new(k.to_vec(), lambda.to_vec())
    }

    fn b1_schedule() -> Schedule {
        sched(&[3, 2, 1], &[int(1), frac(7, 5), frac(49, 25)])
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(b1_schedule().validate(3).is_ok());
        assert!(sched(&[5], &[int(1)]).validate(5).is_ok());
        let err = sched(&[3, 2, 1], &[int(1), int(2), int(1)])
            .validate(3)
            .unwrap_err();
        assert!(matches!(err, Error::MalformedSchedule(m) if m.contains("inflations")));
        assert!(sched(&[3, 4], &[int(1), int(1)]).validate(3).is_err());
        assert!(sched(&[3], &[int(2)]).validate(3).is_err());
        assert!(b1_schedule().validate(4).is_err());
    }

    #[test]
    fn argmin_stage_examples() {
        assert_eq!(b1_schedule().argmin_stage().unwrap(), 2);
        assert_eq!(
            sched(&[4, 2, 1], &[int(1), int(2), int(4)])
                .argmin_stage()
                .unwrap(),
            0
        );
        assert_eq!(sched(&[2, 1], &[int(1), int(5)]).argmin_stage().unwrap(), 0);
        assert_eq!(
            sched(&[2, 0], &[int(1), int(5)]).argmin_stage(),
            Err(Error::TrivialInstance)
        );
    }

    #[test]
    fn threshold_tau_examples() {
        let beta = frac(7, 3);
        // max ratio is 1, attained on day 2
        assert_eq!(b1_schedule().threshold_tau(&frac(49, 25), &beta).unwrap(), beta);
        assert_eq!(
            sched(&[1, 1], &[int(1), int(1)])
                .threshold_tau(&int(10), &int(1))
                .unwrap(),
            int(10)
        );
        assert_eq!(
            sched(&[2, 1], &[int(1), int(5)])
                .threshold_tau(&int(11), &int(50))
                .unwrap(),
            int(275)
        );
    }

    #[test]
    fn merge_examples() {
        let s = sched(&[5, 4, 3, 2, 1], &[int(1), int(2), int(30), int(50), int(700)]);
        let (merged, map) = s.merge_stages(&int(12));
        assert_eq!(map.kept, vec![0, 2, 4]);
        assert_eq!(map.latest_kept, vec![0, 0, 1, 1, 2]);
        assert_eq!(merged.cardinalities, vec![5, 3, 1]);
        let flat = sched(&[3, 2, 1], &[int(1), int(1), int(1)]);
        assert_eq!(flat.merge_stages(&int(12)).1.kept, vec![0]);
        assert_eq!(s.merge_stages(&int(1)).1.kept, vec![0, 1, 2, 3, 4]);
    }

    fn plan_with(residuals: &[(usize, Rational)], day: usize, day0: Rational) -> ThriftyPlan {
        let mut plan = ThriftyPlan::empty(&[], &sched(&[0], &[int(1)]));
        plan.residuals = residuals.iter().cloned().collect();
        plan.critical_day = day;
        plan.day0_cost = day0;
        plan
    }

    #[test]
    fn evaluate_examples() {
        let s = sched(&[3, 2], &[int(1), int(2)]);
        let plan = plan_with(&[(0, int(5)), (1, int(3)), (2, int(1))], 1, int(4));
        let report = evaluate_thrifty(&plan, &s, &[0, 1, 2]).unwrap();
        assert_eq!(report.robcov, int(20));
        assert_eq!(report.witness, vec![0, 1]);

        let zero = plan_with(&[(0, int(0)), (1, int(0))], 1, int(7));
        let s2 = sched(&[2, 1], &[int(1), int(9)]);
        let report = evaluate_thrifty(&zero, &s2, &[0, 1]).unwrap();
        assert_eq!(report.robcov, int(7));
        assert!(report.witness.is_empty());

        let b1 = plan_with(&[(0, frac(7, 5)), (1, int(1)), (2, int(1))], 2, int(0));
        let report = evaluate_thrifty(&b1, &b1_schedule(), &[0, 1, 2]).unwrap();
        assert_eq!(report.robcov, frac(343, 125));

        assert_eq!(
            evaluate_thrifty(&b1, &b1_schedule(), &[0, 1, 2, 3]),
            Err(Error::MissingResidual(3))
        );
    }

    #[test]
    fn ties_in_witness_prefer_small_ids() {
        let s = sched(&[3, 1], &[int(1), int(1)]);
        let plan = plan_with(&[(4, int(2)), (1, int(2)), (2, int(2))], 1, int(0));
        let report = evaluate_thrifty(&plan, &s, &[1, 2, 4]).unwrap();
        assert_eq!(report.witness, vec![1]);
    }

    #[test]
    fn guess_grid_is_geometric_and_inclusive() {
        assert_eq!(guess_grid(&int(3), &int(10)), vec![int(3), int(6), int(10)]);
        assert_eq!(guess_grid(&int(3), &int(12)), vec![int(3), int(6), int(12)]);
        assert_eq!(guess_grid(&int(5), &int(5)), vec![int(5)]);
        assert_eq!(guess_grid(&int(0), &int(0)), vec![int(1)]);
    }

    #[test]
    fn scenario_actives_intersect() {
        let seq = ScenarioSequence {
            revelations: vec![[0, 1].into(), [1].into()],
        };
        let actives = seq.actives(&[0, 1, 2]);
        assert_eq!(actives[2], BTreeSet::from([1]));
        assert!(seq.is_admissible(
            &sched(&[3, 2, 1], &[int(1), int(1), int(1)]),
            &UncertaintySpec::Cardinality
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn schedule_strategy() -> impl Strategy<Value = Schedule> {
            (1usize..6, prop::collection::vec((0usize..3, 0i64..40), 0..6)).prop_map(|(k0, steps)| {
                let mut k = vec![k0 + 3];
                let mut lambda = vec![int(1)];
                for (dk, growth) in steps {
                    let next_k = k.last().unwrap().saturating_sub(dk).max(1);
                    k.push(next_k);
                    let next_l = lambda.last().unwrap() * (int(1) + frac(growth, 4));
                    lambda.push(next_l);
                }
                Schedule::new(k, lambda)
            })
        }

        proptest! {
            #[test]
            fn merge_is_idempotent(s in schedule_strategy(), r in 1i64..20) {
                let r = frac(r, 2).max(int(1));
                let (once, _) = s.merge_stages(&r);
                let (twice, map) = once.merge_stages(&r);
                prop_assert_eq!(&once, &twice);
                prop_assert_eq!(map.kept.len(), once.cardinalities.len());
                prop_assert!(once.validate(s.k(0)).is_ok());
            }

            #[test]
            fn argmin_is_scale_invariant(s in schedule_strategy(), c in 1i64..9) {
                let mut scaled = s.clone();
                for l in &mut scaled.inflations {
                    *l = &*l * frac(c, 3);
                }
                prop_assert_eq!(s.argmin_stage().unwrap(), scaled.argmin_stage().unwrap());
            }
        }
    }
}
