//! Bitmask view of an instance: ground units and actions become bit
//! positions, and each problem supplies its feasibility rule.

use crate::error::{Error, Result};
use crate::graph::{DisjointSet, Pair, WeightedGraph};
use crate::instance::Problem;
use crate::rational::Rational;
use crate::setcover::SetSystem;
use num_traits::Zero;

/// Bitset over unit or action positions.
pub type Mask = u128;

pub const MAX_BITS: usize = 128;

#[derive(Debug, Clone)]
enum Rule {
    /// Unit mask of every set.
    Cover { members: Vec<Mask> },
    Cut {
        vertices: usize,
        root: usize,
        ends: Vec<(usize, usize)>,
        unit_vertex: Vec<usize>,
    },
    /// `demands[u]` must end up connected for every active unit `u`. For a
    /// tree every active vertex must reach the smallest active one instead.
    Connect {
        vertices: usize,
        ends: Vec<(usize, usize)>,
        demands: Vec<(usize, usize)>,
        tree: bool,
    },
}

#[derive(Debug, Clone)]
pub struct Game {
    units: Vec<usize>,
    actions: Vec<usize>,
    costs: Vec<Rational>,
    rule: Rule,
}

pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_BITS).filter(move |&b| mask >> b & 1 == 1)
}

pub fn full(n: usize) -> Mask {
    if n >= MAX_BITS {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn too_many(what: &str, n: usize) -> Result<()> {
    if n > MAX_BITS {
        return Err(Error::TooLarge(format!(
            "{n} {what} exceed the {MAX_BITS}-bit state"
        )));
    }
    Ok(())
}

impl Game {
    pub fn from_problem(problem: &Problem) -> Result<Self> {
        match problem {
            Problem::SetCover(s) => Self::cover(s),
            Problem::MinCut(g) => {
                Self::cut(g, g.root.ok_or_else(|| Error::InvalidInstance("no root".into()))?)
            }
            Problem::SteinerTree(g) => Self::tree(g),
            Problem::SteinerForest(g) => Self::forest(g, &g.pairs),
        }
    }

    pub fn cover(system: &SetSystem) -> Result<Self> {
        too_many("elements", system.universe_size())?;
        too_many("sets", system.sets().len())?;
        let members = system
            .sets()
            .iter()
            .map(|s| s.members.iter().fold(0, |m, &e| m | 1 << e))
            .collect();
        Ok(Self {
            units: system.elements(),
            actions: (0..system.sets().len()).collect(),
            costs: system.sets().iter().map(|s| s.cost.clone()).collect(),
            rule: Rule::Cover { members },
        })
    }

    pub fn cut(g: &WeightedGraph, root: usize) -> Result<Self> {
        let units: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != root).collect();
        too_many("vertices", units.len())?;
        too_many("edges", g.edges().len())?;
        Ok(Self {
            rule: Rule::Cut {
                vertices: g.vertex_count(),
                root,
                ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
                unit_vertex: units.clone(),
            },
            units,
            actions: g.edges().iter().map(|e| e.id).collect(),
            costs: g.edges().iter().map(|e| e.cost.clone()).collect(),
        })
    }

    pub fn tree(g: &WeightedGraph) -> Result<Self> {
        too_many("vertices", g.vertex_count())?;
        too_many("edges", g.edges().len())?;
        Ok(Self {
            units: g.vertices(),
            actions: g.edges().iter().map(|e| e.id).collect(),
            costs: g.edges().iter().map(|e| e.cost.clone()).collect(),
            rule: Rule::Connect {
                vertices: g.vertex_count(),
                ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
                demands: g.vertices().into_iter().map(|v| (v, v)).collect(),
                tree: true,
            },
        })
    }

    pub fn forest(g: &WeightedGraph, pairs: &[Pair]) -> Result<Self> {
        too_many("pairs", pairs.len())?;
        too_many("edges", g.edges().len())?;
        Ok(Self {
            units: pairs.iter().map(|p| p.id).collect(),
            actions: g.edges().iter().map(|e| e.id).collect(),
            costs: g.edges().iter().map(|e| e.cost.clone()).collect(),
            rule: Rule::Connect {
                vertices: g.vertex_count(),
                ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
                demands: pairs.iter().map(|p| (p.s, p.t)).collect(),
                tree: false,
            },
        })
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn costs(&self) -> &[Rational] {
        &self.costs
    }

    pub fn cost(&self, mask: Mask) -> Rational {
        bits(mask).map(|a| &self.costs[a]).sum()
    }

    /// Mask of the given ground ids; unknown ids are an error.
    pub fn unit_mask<'a>(&self, ids: impl IntoIterator<Item = &'a usize>) -> Result<Mask> {
        position_mask(&self.units, ids, "unit")
    }

    pub fn action_mask<'a>(&self, ids: impl IntoIterator<Item = &'a usize>) -> Result<Mask> {
        position_mask(&self.actions, ids, "action")
    }

    pub fn units_of(&self, mask: Mask) -> Vec<usize> {
        bits(mask).map(|b| self.units[b]).collect()
    }

    pub fn actions_of(&self, mask: Mask) -> Vec<usize> {
        bits(mask).map(|b| self.actions[b]).collect()
    }

    pub fn satisfied(&self, owned: Mask, active: Mask) -> bool {
        match &self.rule {
            Rule::Cover { members } => active & !covered(members, owned) == 0,
            Rule::Cut { unit_vertex, .. } => {
                let reach = self.root_side(owned);
                bits(active).all(|u| !reach[unit_vertex[u]])
            }
            Rule::Connect { .. } => {
                let mut dsu = self.components(owned);
                self.demands(active).all(|(a, b)| dsu.same(a, b))
            }
        }
    }

    /// Part of the state that future play depends on, given `active`.
    pub fn key(&self, owned: Mask, active: Mask) -> Mask {
        match &self.rule {
            Rule::Cover { members } => covered(members, owned) & active,
            Rule::Cut { ends, .. } => {
                let reach = self.root_side(owned);
                bits(owned)
                    .filter(|&a| reach[ends[a].0] || reach[ends[a].1])
                    .fold(0, |m, a| m | 1 << a)
            }
            Rule::Connect { .. } => self.closure(owned),
        }
    }

    /// Unowned actions that could still matter for `active`.
    pub fn useful(&self, owned: Mask, active: Mask) -> Mask {
        if self.satisfied(owned, active) {
            return 0;
        }
        match &self.rule {
            Rule::Cover { members } => {
                let open = active & !covered(members, owned);
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| *m & open != 0)
                    .fold(0, |m, (a, _)| m | 1 << a)
            }
            Rule::Cut { ends, .. } => {
                let reach = self.root_side(owned);
                (0..ends.len())
                    .filter(|&a| owned >> a & 1 == 0 && reach[ends[a].0])
                    .fold(0, |m, a| m | 1 << a)
            }
            Rule::Connect { .. } => full(self.actions.len()) & !self.closure(owned),
        }
    }

    fn root_side(&self, owned: Mask) -> Vec<bool> {
        let Rule::Cut {
            vertices, root, ends, ..
        } = &self.rule
        else {
            unreachable!("cut rule")
        };
        let mut reach = vec![false; *vertices];
        reach[*root] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (a, &(u, v)) in ends.iter().enumerate() {
                if owned >> a & 1 == 0 && reach[u] != reach[v] {
                    reach[u] = true;
                    reach[v] = true;
                    changed = true;
                }
            }
        }
        reach
    }

    fn components(&self, owned: Mask) -> DisjointSet {
        let Rule::Connect { vertices, ends, .. } = &self.rule else {
            unreachable!("connect rule")
        };
        let mut dsu = DisjointSet::new(*vertices);
        for a in bits(owned) {
            dsu.union(ends[a].0, ends[a].1);
        }
        dsu
    }

    /// Edges whose endpoints are already connected; determines the partition.
    fn closure(&self, owned: Mask) -> Mask {
        let Rule::Connect { ends, .. } = &self.rule else {
            unreachable!("connect rule")
        };
        let mut dsu = self.components(owned);
        (0..ends.len())
            .filter(|&a| dsu.same(ends[a].0, ends[a].1))
            .fold(0, |m, a| m | 1 << a)
    }

    fn demands(&self, active: Mask) -> Box<dyn Iterator<Item = (usize, usize)> + '_> {
        let Rule::Connect { demands, tree, .. } = &self.rule else {
            unreachable!("connect rule")
        };
        if *tree {
            let Some(first) = bits(active).next() else {
                return Box::new(std::iter::empty());
            };
            let anchor = demands[first].0;
            Box::new(bits(active).map(move |u| (anchor, demands[u].0)))
        } else {
            Box::new(bits(active).map(move |u| demands[u]))
        }
    }

    /// Every subset of actions, cheapest first (ties by mask).
    pub fn purchase_order(&self) -> Vec<(Mask, Rational)> {
        let m = self.actions.len();
        let mut order: Vec<(Mask, Rational)> = (0..1u128 << m).map(|mask| (mask, self.cost(mask))).collect();
        order.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        order
    }

    /// Cheapest purchase that makes `active` satisfied, if any.
    pub fn min_completion(
        &self,
        order: &[(Mask, Rational)],
        owned: Mask,
        active: Mask,
    ) -> Option<(Mask, Rational)> {
        if self.satisfied(owned, active) {
            return Some((0, Rational::zero()));
        }
        let useful = self.useful(owned, active);
        order
            .iter()
            .filter(|(mask, _)| mask & !useful == 0)
            .find(|(mask, _)| self.satisfied(owned | mask, active))
            .cloned()
    }
}

fn covered(members: &[Mask], owned: Mask) -> Mask {
    bits(owned).fold(0, |m, a| m | members[a])
}

fn position_mask<'a>(
    positions: &[usize],
    ids: impl IntoIterator<Item = &'a usize>,
    what: &str,
) -> Result<Mask> {
    let mut mask = 0;
    for id in ids {
        let bit = positions
            .iter()
            .position(|p| p == id)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown {what} {id}")))?;
        mask |= 1 << bit;
    }
    Ok(mask)
}

/// All submasks of `mask` with exactly `size` bits.
pub fn subsets_of_size(mask: Mask, size: usize) -> Vec<Mask> {
    let members: Vec<usize> = bits(mask).collect();
    let mut out = Vec::new();
    fn walk(members: &[usize], size: usize, start: usize, acc: Mask, out: &mut Vec<Mask>) {
        if size == 0 {
            out.push(acc);
            return;
        }
        for i in start..members.len() {
            if members.len() - i < size {
                break;
            }
            walk(members, size - 1, i + 1, acc | 1 << members[i], out);
        }
    }
    if size <= members.len() {
        walk(&members, size, 0, 0, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::setcover::WeightedSet;

    #[test]
    fn subsets_by_size() {
        assert_eq!(subsets_of_size(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b101, 0), vec![0]);
        assert!(subsets_of_size(0b1, 2).is_empty());
    }

    #[test]
    fn cover_rule() {
        let s = SetSystem::new(
            3,
            vec![
                WeightedSet {
                    members: [0, 1].into(),
                    cost: int(1),
                },
                WeightedSet {
                    members: [2].into(),
                    cost: int(1),
                },
            ],
        )
        .unwrap();
        let g = Game::cover(&s).unwrap();
        assert!(g.satisfied(0b01, 0b011));
        assert!(!g.satisfied(0b01, 0b111));
        assert_eq!(g.useful(0b01, 0b111), 0b10);
        assert_eq!(g.key(0b01, 0b101), 0b001);
    }

    #[test]
    fn cut_rule() {
        // ρ=0 – 1 – 2
        let w = WeightedGraph::new(3, vec![(0, 1, int(1)), (1, 2, int(1))]).unwrap();
        let g = Game::cut(&w, 0).unwrap();
        // units are vertices 1, 2 at bits 0, 1
        assert!(g.satisfied(0b01, 0b11));
        assert!(g.satisfied(0b10, 0b10));
        assert!(!g.satisfied(0b10, 0b11));
        assert_eq!(g.key(0b11, 0b11), 0b01);
        assert_eq!(g.useful(0, 0b10), 0b11);
    }

    #[test]
    fn tree_and_forest_rules() {
        let w = WeightedGraph::new(3, vec![(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(5))])
            .unwrap()
            .with_pairs(vec![(0, 2)])
            .unwrap();
        let t = Game::tree(&w).unwrap();
        assert!(t.satisfied(0b011, 0b111));
        assert!(t.satisfied(0, 0b010));
        assert_eq!(t.key(0b011, 0b111), 0b111);
        let f = Game::forest(&w, &w.pairs).unwrap();
        assert!(!f.satisfied(0b001, 0b1));
        let order = f.purchase_order();
        assert_eq!(f.min_completion(&order, 0, 0b1), Some((0b011, int(2))));
    }
}
