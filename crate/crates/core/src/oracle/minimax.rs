//! Exact optimal adaptive strategy by backward induction.

use super::game::{full, subsets_of_size, Game, Mask};
use super::SizeLimits;
use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::model::{Schedule, UncertaintySpec};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::{BTreeSet, HashMap};

/// `None` means no feasible completion.
pub type Value = Option<Rational>;

#[derive(Debug, Clone, Default)]
pub struct MinimaxOptions {
    /// Let the adversary shrink the active set arbitrarily instead of only
    /// to the largest admissible size.
    pub full_adversary: bool,
    /// Days on which purchases are allowed; all days when `None`.
    pub allowed_days: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub day: usize,
    pub active: Vec<usize>,
    /// Action ids bought at this state.
    pub purchase: Vec<usize>,
    pub spend: Rational,
    pub value: Rational,
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    /// Days on which the strategy buys something along some line.
    pub fn purchase_days(&self) -> BTreeSet<usize> {
        let mut days = BTreeSet::new();
        self.collect_days(&mut days);
        days
    }

    fn collect_days(&self, days: &mut BTreeSet<usize>) {
        if !self.purchase.is_empty() {
            days.insert(self.day);
        }
        for child in &self.children {
            child.collect_days(days);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TraceNode::node_count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaxResult {
    pub value: Rational,
    pub trace: TraceNode,
}

/// Adversary transitions shared with the exhaustive evaluator.
#[derive(Debug, Clone)]
pub(crate) enum Adversary {
    Cardinality { ground: usize, k: Vec<usize> },
    Subset { parts: Vec<Mask>, k: Vec<usize> },
}

impl Adversary {
    pub(crate) fn new(game: &Game, schedule: &Schedule, uncertainty: &UncertaintySpec) -> Result<Self> {
        Ok(match uncertainty {
            UncertaintySpec::Cardinality => Adversary::Cardinality {
                ground: game.unit_count(),
                k: schedule.cardinalities.clone(),
            },
            UncertaintySpec::SubsetKRobust { parts } => Adversary::Subset {
                parts: parts.iter().map(|p| game.unit_mask(p)).collect::<Result<_>>()?,
                k: schedule.cardinalities.clone(),
            },
        })
    }

    /// Active sets reachable on `day` from `active`. With `maximal`, only
    /// the largest admissible shrinkings.
    pub(crate) fn moves(&self, day: usize, active: Mask, maximal: bool) -> Vec<Mask> {
        let size = active.count_ones() as usize;
        match self {
            Adversary::Cardinality { ground, k } => {
                let hi = size.min(k[day]);
                let lo = if maximal {
                    hi
                } else {
                    k[day].saturating_sub(ground - size)
                };
                (lo..=hi).flat_map(|s| subsets_of_size(active, s)).collect()
            }
            Adversary::Subset { parts, k } => {
                let part = parts[day - 1];
                let outside = active & !part;
                let inside = active & part;
                let hi = (inside.count_ones() as usize).min(k[day]);
                let lo = if maximal { hi } else { 0 };
                // Out-of-part units are unconstrained; only the final
                // intersection matters, so they all stay active.
                (lo..=hi)
                    .flat_map(|s| subsets_of_size(inside, s))
                    .map(|c| outside | c)
                    .collect()
            }
        }
    }
}

pub struct MinimaxSolver {
    game: Game,
    schedule: Schedule,
    adversary: Adversary,
    allowed: Vec<bool>,
    maximal: bool,
    order: Vec<(Mask, Rational)>,
    memo: HashMap<(usize, Mask, Mask), Value>,
}

impl MinimaxSolver {
    pub fn new(instance: &ProblemInstance, limits: &SizeLimits, options: &MinimaxOptions) -> Result<Self> {
        let game = Game::from_problem(&instance.problem)?;
        limits.check(
            game.unit_count(),
            game.action_count(),
            instance.schedule.horizon(),
        )?;
        super::check_enumerable(game.action_count())?;
        let horizon = instance.schedule.horizon();
        let allowed = match &options.allowed_days {
            None => vec![true; horizon + 1],
            Some(days) => (0..=horizon).map(|d| days.contains(&d)).collect(),
        };
        Ok(Self {
            adversary: Adversary::new(&game, &instance.schedule, &instance.uncertainty)?,
            order: game.purchase_order(),
            game,
            schedule: instance.schedule.clone(),
            allowed,
            maximal: !options.full_adversary,
            memo: HashMap::new(),
        })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    /// Optimal worst case from the start of the game.
    pub fn root_value(&mut self) -> Value {
        self.value(0, full(self.game.unit_count()), 0)
    }

    /// Optimal worst case from a state, with units and actions given by id.
    pub fn value_at(&mut self, day: usize, active: &BTreeSet<usize>, owned: &[usize]) -> Result<Value> {
        if day > self.schedule.horizon() {
            return Err(Error::InvalidInstance(format!("day {day} beyond the horizon")));
        }
        let active = self.game.unit_mask(active)?;
        let owned = self.game.action_mask(owned)?;
        Ok(self.value(day, active, owned))
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    fn value(&mut self, day: usize, active: Mask, owned: Mask) -> Value {
        if self.game.satisfied(owned, active) {
            return Some(Rational::zero());
        }
        let key = (day, active, self.game.key(owned, active));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let best = self.best_purchase(day, active, owned).map(|(_, v)| v);
        self.memo.insert(key, best.clone());
        best
    }

    /// Cheapest first optimal purchase and the resulting value.
    fn best_purchase(&mut self, day: usize, active: Mask, owned: Mask) -> Option<(Mask, Rational)> {
        let useful = self.game.useful(owned, active);
        let lambda = self.schedule.lambda(day).clone();
        let mut best: Option<(Mask, Rational)> = None;
        for i in 0..self.order.len() {
            let mask = self.order[i].0;
            if mask & !useful != 0 {
                continue;
            }
            if mask != 0 && !self.allowed[day] {
                break;
            }
            let spend = &lambda * &self.order[i].1;
            if best.as_ref().is_some_and(|(_, b)| &spend >= b) {
                break;
            }
            let rest = self.continuation(day, active, owned | mask);
            if let Some(rest) = rest {
                let total = spend + rest;
                if best.as_ref().is_none_or(|(_, b)| &total < b) {
                    best = Some((mask, total));
                }
            }
        }
        best
    }

    fn continuation(&mut self, day: usize, active: Mask, owned: Mask) -> Value {
        if day == self.schedule.horizon() {
            return self.game.satisfied(owned, active).then(Rational::zero);
        }
        let mut worst = Rational::zero();
        for next in self.adversary.moves(day + 1, active, self.maximal) {
            {
                let v = self.value(day + 1, next, owned)?;
                worst = worst.max(v)
            }
        }
        Some(worst)
    }

    /// Optimal strategy tree from the start; lines stop once satisfied.
    pub fn trace(&mut self) -> Option<TraceNode> {
        self.trace_from(0, full(self.game.unit_count()), 0)
    }

    fn trace_from(&mut self, day: usize, active: Mask, owned: Mask) -> Option<TraceNode> {
        let value = self.value(day, active, owned)?;
        let mut node = TraceNode {
            day,
            active: self.game.units_of(active),
            purchase: Vec::new(),
            spend: Rational::zero(),
            value,
            children: Vec::new(),
        };
        if self.game.satisfied(owned, active) {
            return Some(node);
        }
        let (mask, _) = self.best_purchase(day, active, owned)?;
        node.purchase = self.game.actions_of(mask);
        node.spend = self.schedule.lambda(day) * self.game.cost(mask);
        if day < self.schedule.horizon() {
            for next in self.adversary.moves(day + 1, active, self.maximal) {
                node.children.push(self.trace_from(day + 1, next, owned | mask)?);
            }
        }
        Some(node)
    }
}

pub fn minimax_opt(instance: &ProblemInstance, limits: &SizeLimits) -> Result<MinimaxResult> {
    minimax_with(instance, limits, &MinimaxOptions::default())
}

pub fn minimax_with(
    instance: &ProblemInstance,
    limits: &SizeLimits,
    options: &MinimaxOptions,
) -> Result<MinimaxResult> {
    let mut solver = MinimaxSolver::new(instance, limits, options)?;
    let value = solver.root_value().ok_or(Error::Infeasible)?;
    let trace = solver.trace().ok_or(Error::Infeasible)?;
    Ok(MinimaxResult { value, trace })
}

/// Optimal value only, skipping the trace.
pub fn minimax_value(
    instance: &ProblemInstance,
    limits: &SizeLimits,
    options: &MinimaxOptions,
) -> Result<Value> {
    Ok(MinimaxSolver::new(instance, limits, options)?.root_value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::instance::Problem;
    use crate::rational::int;
    use crate::setcover::{SetSystem, WeightedSet};

    fn two_spokes(k: Vec<usize>, lambda: Vec<Rational>) -> ProblemInstance {
        let g = WeightedGraph::new(3, vec![(0, 1, int(10)), (0, 2, int(1))])
            .unwrap()
            .with_root(0)
            .unwrap();
        ProblemInstance::cardinality(Problem::MinCut(g), Schedule::new(k, lambda)).unwrap()
    }

    #[test]
    fn two_spokes_cut_value() {
        let r = minimax_opt(
            &two_spokes(vec![2, 1], vec![int(1), int(5)]),
            &SizeLimits::default(),
        )
        .unwrap();
        assert_eq!(r.value, int(11));
    }

    #[test]
    fn empty_final_requirement_costs_nothing() {
        let r = minimax_opt(
            &two_spokes(vec![2, 0], vec![int(1), int(5)]),
            &SizeLimits::default(),
        )
        .unwrap();
        assert_eq!(r.value, int(0));
        assert!(r.trace.purchase_days().is_empty());
    }

    #[test]
    fn waiting_pays_off_when_inflation_is_mild() {
        // two elements, one set each; the adversary keeps only one
        let s = SetSystem::new(
            2,
            vec![
                WeightedSet {
                    members: [0].into(),
                    cost: int(1),
                },
                WeightedSet {
                    members: [1].into(),
                    cost: int(1),
                },
            ],
        )
        .unwrap();
        let inst = ProblemInstance::cardinality(
            Problem::SetCover(s),
            Schedule::new(vec![2, 1], vec![int(1), Rational::new(3.into(), 2.into())]),
        )
        .unwrap();
        let r = minimax_opt(&inst, &SizeLimits::default()).unwrap();
        assert_eq!(r.value, Rational::new(3.into(), 2.into()));
        assert_eq!(r.trace.purchase_days(), [1].into());
        let only_day0 = MinimaxOptions {
            allowed_days: Some(vec![0]),
            ..MinimaxOptions::default()
        };
        assert_eq!(
            minimax_value(&inst, &SizeLimits::default(), &only_day0).unwrap(),
            Some(int(2))
        );
    }

    #[test]
    fn limits_are_enforced_up_front() {
        let tight = SizeLimits {
            max_units: 1,
            ..SizeLimits::default()
        };
        let inst = two_spokes(vec![2, 1], vec![int(1), int(5)]);
        assert!(matches!(minimax_opt(&inst, &tight), Err(Error::TooLarge(_))));
    }
}
