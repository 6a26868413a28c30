//! Known hard instances and seeded random ones.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::instance::{Problem, ProblemInstance, ProblemKind};
use crate::model::{Schedule, UncertaintySpec};
use crate::oracle::{bits, Game, Mask, Strategy};
use crate::rational::{frac, int, pow, Rational};
use crate::setcover::{SetSystem, WeightedSet};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    LowerBoundAllStages {
        horizon: usize,
        epsilon: Rational,
    },
    SubsetKRobustBad {
        horizon: usize,
        lambda: u64,
    },
    RandomSetCover {
        elements: usize,
        sets: usize,
        horizon: usize,
        seed: u64,
    },
    RandomGraph(RandomGraphSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomGraphSpec {
    pub problem: ProblemKind,
    pub vertices: usize,
    pub edges: usize,
    /// Demand pairs, used by the forest problem only.
    pub pairs: usize,
    pub horizon: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<ProblemInstance> {
        match self {
            GeneratorSpec::LowerBoundAllStages { horizon, epsilon } => {
                gen_lowerbound_allstages(*horizon, epsilon)
            }
            GeneratorSpec::SubsetKRobustBad { horizon, lambda } => {
                Ok(gen_subset_krobust_bad(*horizon, *lambda)?.0)
            }
            GeneratorSpec::RandomSetCover {
                elements,
                sets,
                horizon,
                seed,
            } => random_set_cover(*elements, *sets, *horizon, *seed),
            GeneratorSpec::RandomGraph(spec) => random_graph_instance(spec),
        }
    }
}

/// Every optimal strategy buys on every day: elements `0..=T`, scenario
/// sizes `k_i = T + 1 - i`, inflations `(1+ε)^i`.
pub fn gen_lowerbound_allstages(horizon: usize, epsilon: &Rational) -> Result<ProblemInstance> {
    if horizon == 0 {
        return Err(Error::BadParameters("horizon must be at least 1".into()));
    }
    if epsilon <= &Rational::zero() {
        return Err(Error::BadParameters("epsilon must be positive".into()));
    }
    let base = Rational::one() + epsilon;
    let lambda: Vec<Rational> = (0..=horizon).map(|i| pow(&base, i)).collect();
    if lambda[horizon] >= int(2) {
        return Err(Error::BadParameters(format!("(1+ε)^{horizon} must stay below 2")));
    }
    // Elements are numbered from 0.
    let mut sets = Vec::new();
    for i in 1..horizon {
        let span: Vec<usize> = (i - 1..=horizon).collect();
        let cost = &lambda[horizon] / &lambda[i];
        for dropped in span[1..].iter().rev() {
            let members = span.iter().copied().filter(|e| e != dropped).collect();
            sets.push(WeightedSet {
                members,
                cost: cost.clone(),
            });
        }
    }
    for e in [horizon - 1, horizon] {
        sets.push(WeightedSet {
            members: [e].into(),
            cost: int(1),
        });
    }
    let system = SetSystem::new(horizon + 1, sets)?;
    let k = (0..=horizon).map(|i| horizon + 1 - i).collect();
    ProblemInstance::cardinality(Problem::SetCover(system), Schedule::new(k, lambda))
}

/// Covers, on each day `i`, the active elements of part `P_i`.
#[derive(Debug, Clone)]
pub struct ScriptedStrategy {
    parts: Vec<Mask>,
}

impl Strategy for ScriptedStrategy {
    fn act(&self, _game: &Game, day: usize, active: Mask, _owned: Mask) -> Mask {
        // singleton set ids coincide with element ids
        if day == 0 {
            0
        } else {
            active & self.parts[day - 1]
        }
    }
}

/// Subset-uncertainty instance on which thrifty strategies fail, with parts
/// of sizes `λ^(i+1)`.
pub fn gen_subset_krobust_bad(horizon: usize, lambda: u64) -> Result<(ProblemInstance, ScriptedStrategy)> {
    if lambda < 2 {
        return Err(Error::BadParameters("λ must be at least 2".into()));
    }
    let sizes = (1..=horizon)
        .map(|i| {
            (lambda as usize)
                .checked_pow(i as u32 + 1)
                .ok_or_else(|| Error::BadParameters("part sizes overflow".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    gen_subset_krobust_with_sizes(lambda, &sizes)
}

/// Same construction with custom part sizes (the horizon is `sizes.len()`).
pub fn gen_subset_krobust_with_sizes(
    lambda: u64,
    sizes: &[usize],
) -> Result<(ProblemInstance, ScriptedStrategy)> {
    if lambda < 2 {
        return Err(Error::BadParameters("λ must be at least 2".into()));
    }
    if sizes.is_empty() {
        return Err(Error::BadParameters("at least one part is needed".into()));
    }
    let total: usize = sizes.iter().sum();
    if total > crate::oracle::MAX_BITS {
        return Err(Error::BadParameters(format!(
            "{total} elements exceed the {} supported",
            crate::oracle::MAX_BITS
        )));
    }
    let l = int(lambda as i64);
    let mut parts = Vec::new();
    let mut sets = Vec::new();
    let mut next = 0;
    for (i, &size) in sizes.iter().enumerate() {
        let cost = Rational::one() / pow(&l, i + 1);
        let part: Vec<usize> = (next..next + size).collect();
        for &e in &part {
            sets.push(WeightedSet {
                members: [e].into(),
                cost: cost.clone(),
            });
        }
        next += size;
        parts.push(part);
    }
    let horizon = sizes.len();
    let mut k = vec![total];
    k.extend(std::iter::repeat_n(1, horizon));
    let schedule = Schedule::new(k, (0..=horizon).map(|i| pow(&l, i)).collect());
    let strategy = ScriptedStrategy {
        parts: parts
            .iter()
            .map(|p| p.iter().fold(0, |m, &e| m | 1 << e))
            .collect(),
    };
    let instance = ProblemInstance::new(
        Problem::SetCover(SetSystem::new(total, sets)?),
        schedule,
        UncertaintySpec::SubsetKRobust { parts },
    )?;
    Ok((instance, strategy))
}

/// Optimal worst case on the subset-uncertainty instance when purchases are
/// only allowed on `allowed_days`. Elements of a part are interchangeable,
/// so the state is the number of uncovered active elements per part.
/// `None` when no allowed strategy is feasible.
pub fn subset_bad_restricted_opt(lambda: u64, sizes: &[usize], allowed_days: &[usize]) -> Option<Rational> {
    struct Counts<'a> {
        lambda: Rational,
        horizon: usize,
        allowed: &'a [usize],
        memo: HashMap<(usize, Vec<usize>), Option<Rational>>,
    }
    impl Counts<'_> {
        fn value(&mut self, day: usize, open: Vec<usize>) -> Option<Rational> {
            if let Some(v) = self.memo.get(&(day, open.clone())) {
                return v.clone();
            }
            let unit_price: Vec<Rational> = (1..=self.horizon)
                .map(|i| pow(&self.lambda, day) / pow(&self.lambda, i))
                .collect();
            let choices: Vec<usize> = if self.allowed.contains(&day) {
                open.clone()
            } else {
                vec![0; open.len()]
            };
            let mut best: Option<Rational> = None;
            let mut buy = vec![0; open.len()];
            loop {
                let spend: Rational = buy.iter().zip(&unit_price).map(|(&b, p)| p * int(b as i64)).sum();
                let left: Vec<usize> = open.iter().zip(&buy).map(|(o, b)| o - b).collect();
                let rest = if day == self.horizon {
                    left.iter().all(|&x| x == 0).then(Rational::zero)
                } else {
                    let mut next = left;
                    next[day] = next[day].min(1);
                    self.value(day + 1, next)
                };
                if let Some(rest) = rest {
                    let total = spend + rest;
                    if best.as_ref().is_none_or(|b| &total < b) {
                        best = Some(total);
                    }
                }
                // odometer over 0..=choices[i]
                let mut i = 0;
                while i < buy.len() && buy[i] == choices[i] {
                    buy[i] = 0;
                    i += 1;
                }
                if i == buy.len() {
                    break;
                }
                buy[i] += 1;
            }
            self.memo.insert((day, open), best.clone());
            best
        }
    }
    let mut counts = Counts {
        lambda: int(lambda as i64),
        horizon: sizes.len(),
        allowed: allowed_days,
        memo: HashMap::new(),
    };
    counts.value(0, sizes.to_vec())
}

fn cost_grid(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(1..=12), if rng.gen_bool(0.25) { 2 } else { 1 })
}

/// Nonincreasing `k` from `ground` down to at least `min_final`, and
/// nondecreasing inflations starting at 1.
pub fn random_schedule(rng: &mut ChaCha8Rng, ground: usize, horizon: usize, min_final: usize) -> Schedule {
    let steps = [frac(0, 1), frac(1, 4), frac(1, 2), int(1), int(2), int(4)];
    let floor = min_final.min(ground);
    let mut k = vec![ground];
    let mut lambda = vec![int(1)];
    for _ in 0..horizon {
        let last = *k.last().unwrap();
        k.push(rng.gen_range(floor..=last));
        let step = steps.choose(rng).unwrap();
        let grown = lambda.last().unwrap() * (Rational::one() + step);
        lambda.push(grown);
    }
    Schedule::new(k, lambda)
}

pub fn random_set_cover(elements: usize, sets: usize, horizon: usize, seed: u64) -> Result<ProblemInstance> {
    if elements == 0 || sets == 0 {
        return Err(Error::BadParameters(
            "need at least one element and one set".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<BTreeSet<usize>> = (0..sets)
        .map(|_| {
            let size = rng.gen_range(1..=elements.min(3));
            (0..elements)
                .collect::<Vec<_>>()
                .choose_multiple(&mut rng, size)
                .copied()
                .collect()
        })
        .collect();
    for e in 0..elements {
        if !members.iter().any(|m| m.contains(&e)) {
            let s = rng.gen_range(0..sets);
            members[s].insert(e);
        }
    }
    let sets = members
        .into_iter()
        .map(|members| WeightedSet {
            members: members.into_iter().collect(),
            cost: cost_grid(&mut rng),
        })
        .collect();
    let schedule = random_schedule(&mut rng, elements, horizon, 1);
    ProblemInstance::cardinality(Problem::SetCover(SetSystem::new(elements, sets)?), schedule)
}

/// Connected simple graph: a random spanning tree plus extra edges.
pub fn random_graph(rng: &mut ChaCha8Rng, vertices: usize, edges: usize) -> Result<WeightedGraph> {
    if vertices < 2 {
        return Err(Error::BadParameters("need at least two vertices".into()));
    }
    let max_edges = vertices * (vertices - 1) / 2;
    if edges + 1 < vertices || edges > max_edges {
        return Err(Error::BadParameters(format!(
            "{edges} edges cannot form a simple connected graph on {vertices} vertices"
        )));
    }
    let mut present = BTreeSet::new();
    let mut list = Vec::new();
    for v in 1..vertices {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
        list.push((u, v, cost_grid(rng)));
    }
    let mut missing: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
        .filter(|p| !present.contains(p))
        .collect();
    missing.shuffle(rng);
    for (u, v) in missing.into_iter().take(edges + 1 - vertices) {
        list.push((u, v, cost_grid(rng)));
    }
    list.shuffle(rng);
    WeightedGraph::new(vertices, list)
}

pub fn random_graph_instance(spec: &RandomGraphSpec) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let g = random_graph(&mut rng, spec.vertices, spec.edges)?;
    let (problem, ground, min_final) = match spec.problem {
        ProblemKind::MinCut => (Problem::MinCut(g.with_root(0)?), spec.vertices - 1, 1),
        ProblemKind::SteinerTree => (Problem::SteinerTree(g), spec.vertices, 2),
        ProblemKind::SteinerForest => {
            if spec.pairs == 0 {
                return Err(Error::BadParameters("forest instances need pairs".into()));
            }
            let pairs = (0..spec.pairs)
                .map(|_| {
                    let s = rng.gen_range(0..spec.vertices);
                    let t = (s + rng.gen_range(1..spec.vertices)) % spec.vertices;
                    (s, t)
                })
                .collect();
            (Problem::SteinerForest(g.with_pairs(pairs)?), spec.pairs, 1)
        }
        ProblemKind::SetCover => return Err(Error::BadParameters("set cover is not a graph problem".into())),
    };
    let schedule = random_schedule(&mut rng, ground, spec.horizon, min_final);
    ProblemInstance::cardinality(problem, schedule)
}

/// Instances small enough for the oracle: at most 6 ground units, 10
/// actions and 3 days. Sizes are drawn from `seed` as well.
pub fn tiny_batch(kind: ProblemKind, count: usize, seed: u64) -> Result<Vec<ProblemInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000 ^ kind as u64);
    (0..count)
        .map(|_| {
            let horizon = rng.gen_range(1..=3);
            let instance_seed = rng.gen();
            match kind {
                ProblemKind::SetCover => {
                    let elements = rng.gen_range(2..=6);
                    let sets = rng.gen_range(2..=8);
                    random_set_cover(elements, sets, horizon, instance_seed)
                }
                _ => {
                    let vertices = match kind {
                        ProblemKind::MinCut => rng.gen_range(3..=7),
                        _ => rng.gen_range(3..=6),
                    };
                    let max_edges = (vertices * (vertices - 1) / 2)
                        .min(if kind == ProblemKind::SteinerForest { 9 } else { 8 });
                    let edges = rng.gen_range(vertices - 1..=max_edges);
                    random_graph_instance(&RandomGraphSpec {
                        problem: kind,
                        vertices,
                        edges,
                        pairs: rng.gen_range(1..=4),
                        horizon,
                        seed: instance_seed,
                    })
                }
            }
        })
        .collect()
}

/// Positions of the set bits, handy for strategies written by hand.
pub fn mask_members(mask: Mask) -> Vec<usize> {
    bits(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{evaluate_strategy, minimax_value, MinimaxOptions, SizeLimits};

    #[test]
    fn lowerbound_construction() {
        let inst = gen_lowerbound_allstages(2, &frac(2, 5)).unwrap();
        let Problem::SetCover(s) = &inst.problem else {
            panic!()
        };
        let listed: Vec<(Vec<usize>, Rational)> = s
            .sets()
            .iter()
            .map(|set| (set.members.to_vec(), set.cost.clone()))
            .collect();
        assert_eq!(
            listed,
            vec![
                (vec![0, 1], frac(7, 5)),
                (vec![0, 2], frac(7, 5)),
                (vec![1], int(1)),
                (vec![2], int(1)),
            ]
        );
        assert_eq!(inst.schedule.cardinalities, vec![3, 2, 1]);
        assert_eq!(inst.schedule.inflations, vec![int(1), frac(7, 5), frac(49, 25)]);

        let t1 = gen_lowerbound_allstages(1, &frac(1, 2)).unwrap();
        let Problem::SetCover(s) = &t1.problem else {
            panic!()
        };
        assert_eq!(s.sets().len(), 2);
        assert!(gen_lowerbound_allstages(2, &frac(1, 2)).is_err());
        assert!(gen_lowerbound_allstages(2, &int(0)).is_err());
    }

    #[test]
    fn lowerbound_optimum_is_final_inflation() {
        for (t, eps) in [(1, frac(1, 2)), (2, frac(2, 5)), (3, frac(1, 5))] {
            let inst = gen_lowerbound_allstages(t, &eps).unwrap();
            let v = minimax_value(&inst, &SizeLimits::default(), &MinimaxOptions::default()).unwrap();
            assert_eq!(v, Some(pow(&(Rational::one() + &eps), t)), "T = {t}");
        }
    }

    #[test]
    fn subset_instance_shape() {
        let (inst, _) = gen_subset_krobust_bad(2, 4).unwrap();
        assert_eq!(inst.ground_units().len(), 80);
        assert_eq!(inst.schedule.inflations, vec![int(1), int(4), int(16)]);
        assert!(gen_subset_krobust_bad(2, 1).is_err());
        assert!(gen_subset_krobust_bad(3, 4).is_err());
    }

    #[test]
    fn count_solver_agrees_with_the_bitmask_game() {
        let limits = SizeLimits::default();
        for sizes in [vec![2, 3], vec![3, 2], vec![1, 4]] {
            let (inst, _) = gen_subset_krobust_with_sizes(3, &sizes).unwrap();
            for allowed in [vec![0, 1, 2], vec![0, 1], vec![0, 2], vec![1, 2], vec![2]] {
                let options = MinimaxOptions {
                    allowed_days: Some(allowed.clone()),
                    ..MinimaxOptions::default()
                };
                let generic = minimax_value(&inst, &limits, &options).unwrap();
                assert_eq!(
                    subset_bad_restricted_opt(3, &sizes, &allowed),
                    generic,
                    "{sizes:?} {allowed:?}"
                );
            }
        }
    }

    #[test]
    fn scripted_strategy_pays_the_horizon() {
        let (inst, strategy) = gen_subset_krobust_with_sizes(3, &[3, 4]).unwrap();
        assert_eq!(
            evaluate_strategy(&inst, &strategy, &SizeLimits::default()).unwrap(),
            int(2)
        );
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            random_set_cover(5, 4, 2, 9).unwrap(),
            random_set_cover(5, 4, 2, 9).unwrap()
        );
        for kind in ProblemKind::ALL {
            assert_eq!(tiny_batch(kind, 5, 3).unwrap(), tiny_batch(kind, 5, 3).unwrap());
        }
    }

    #[test]
    fn tiny_batches_fit_the_oracle() {
        let limits = SizeLimits {
            max_units: 6,
            max_actions: 10,
            max_horizon: 3,
        };
        for kind in ProblemKind::ALL {
            for inst in tiny_batch(kind, 30, 11).unwrap() {
                let game = Game::from_problem(&inst.problem).unwrap();
                limits
                    .check(game.unit_count(), game.action_count(), inst.schedule.horizon())
                    .unwrap();
                assert_eq!(inst.problem.kind(), kind);
            }
        }
    }
}
