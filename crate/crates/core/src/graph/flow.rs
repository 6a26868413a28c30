//! Minimum root-terminal cut by exact shortest-augmenting-path max-flow.

use super::{EdgeSet, WeightedGraph};
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, VecDeque};

struct Arc {
    to: usize,
    residual: Rational,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    /// Adds a pair of mutually reverse arcs; arc `i ^ 1` is the reverse of `i`.
    fn add(&mut self, a: usize, b: usize, forward: Rational, backward: Rational) {
        self.out[a].push(self.arcs.len());
        self.arcs.push(Arc {
            to: b,
            residual: forward,
        });
        self.out[b].push(self.arcs.len());
        self.arcs.push(Arc {
            to: a,
            residual: backward,
        });
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut via = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if !seen[arc.to] && arc.residual > Rational::zero() {
                    seen[arc.to] = true;
                    via[arc.to] = Some(a);
                    queue.push_back(arc.to);
                }
            }
        }
        via
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if !seen[arc.to] && arc.residual > Rational::zero() {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> Rational {
        let mut total = Rational::zero();
        loop {
            let via = self.bfs(source);
            if via[sink].is_none() {
                return total;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut x = sink;
            while let Some(a) = via[x] {
                let r = &self.arcs[a].residual;
                if bottleneck.as_ref().is_none_or(|b| r < b) {
                    bottleneck = Some(r.clone());
                }
                x = self.arcs[a ^ 1].to;
            }
            let delta = bottleneck.expect("augmenting path has at least one arc");
            let mut x = sink;
            while let Some(a) = via[x] {
                self.arcs[a].residual -= &delta;
                self.arcs[a ^ 1].residual += &delta;
                x = self.arcs[a ^ 1].to;
            }
            total += delta;
        }
    }
}

/// Cheapest edge set whose removal disconnects every terminal from `root`.
pub fn min_cut(g: &WeightedGraph, root: usize, terminals: &BTreeSet<usize>) -> Result<(Rational, EdgeSet)> {
    if terminals.contains(&root) {
        return Err(Error::InvalidInstance(format!(
            "root {root} cannot be separated from itself"
        )));
    }
    if terminals.is_empty() {
        return Ok((Rational::zero(), EdgeSet::empty()));
    }
    let n = g.vertex_count();
    let source = n;
    let mut net = Network::new(n + 1);
    let infinite: Rational = g.edges().iter().map(|e| &e.cost).sum::<Rational>() + Rational::one();
    for e in g.edges() {
        net.add(e.u, e.v, e.cost.clone(), e.cost.clone());
    }
    for &t in terminals {
        net.add(source, t, infinite.clone(), Rational::zero());
    }
    let value = net.max_flow(source, root);
    let side = net.reachable(source);
    let cut = g.edge_set(g.edges().iter().filter(|e| side[e.u] != side[e.v]).map(|e| e.id))?;
    debug_assert_eq!(cut.cost, value);
    Ok((value, cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn diamond_needs_two_paths() {
        // ρ=0, a=1, b=2, t=3
        let g = WeightedGraph::new(
            4,
            vec![(0, 1, int(3)), (0, 2, int(2)), (1, 3, int(2)), (2, 3, int(3))],
        )
        .unwrap();
        let (value, cut) = min_cut(&g, 0, &[3].into()).unwrap();
        assert_eq!(value, int(4));
        assert_eq!(cut.cost, int(4));
    }

    #[test]
    fn bottleneck_on_path() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(2)), (1, 2, int(5))]).unwrap();
        let (value, cut) = min_cut(&g, 0, &[2].into()).unwrap();
        assert_eq!(value, int(2));
        assert_eq!(cut.to_vec(), vec![0]);
    }

    #[test]
    fn empty_terminals_and_already_separated() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(2))]).unwrap();
        assert_eq!(
            min_cut(&g, 0, &BTreeSet::new()).unwrap(),
            (int(0), EdgeSet::empty())
        );
        let (value, cut) = min_cut(&g, 0, &[2].into()).unwrap();
        assert_eq!(value, int(0));
        assert!(cut.ids.is_empty());
        assert!(min_cut(&g, 0, &[0].into()).is_err());
    }

    #[test]
    fn zero_cost_edges_are_still_cut() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(0))]).unwrap();
        let (value, cut) = min_cut(&g, 0, &[1].into()).unwrap();
        assert_eq!(value, int(0));
        assert_eq!(cut.to_vec(), vec![0]);
    }
}
