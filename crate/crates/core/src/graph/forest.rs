//! Primal-dual (moat-growing) 2-approximate Steiner forest.
//!
//! Active components grow their duals uniformly; an edge is added when it
//! goes tight. Events are processed one at a time in exact arithmetic,
//! then edges are reverse-deleted in reverse order of addition.

use super::{DisjointSet, EdgeSet, Pair, WeightedGraph};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_traits::Zero;
use std::collections::BTreeSet;

pub fn gw_steiner_forest(g: &WeightedGraph, pairs: &[Pair]) -> Result<EdgeSet> {
    let n = g.vertex_count();
    let mut dsu = DisjointSet::new(n);
    let mut slack: Vec<Rational> = g.edges().iter().map(|e| e.cost.clone()).collect();
    let mut added: Vec<usize> = Vec::new();

    loop {
        let active = active_components(&mut dsu, pairs);
        if active.is_empty() {
            break;
        }
        let mut best: Option<(Rational, usize)> = None;
        let mut rates = vec![0i64; slack.len()];
        for (i, e) in g.edges().iter().enumerate() {
            let (cu, cv) = (dsu.find(e.u), dsu.find(e.v));
            if cu == cv {
                continue;
            }
            let rate = active.contains(&cu) as i64 + active.contains(&cv) as i64;
            rates[i] = rate;
            if rate == 0 {
                continue;
            }
            let time = &slack[i] / int(rate);
            if best.as_ref().is_none_or(|(t, _)| &time < t) {
                best = Some((time, i));
            }
        }
        let Some((delta, chosen)) = best else {
            let p = pairs
                .iter()
                .find(|p| !dsu.same(p.s, p.t))
                .expect("an active component implies an unsatisfied pair");
            return Err(Error::Disconnected(p.s, p.t));
        };
        if !delta.is_zero() {
            for (i, rate) in rates.iter().enumerate() {
                if *rate > 0 {
                    slack[i] -= &delta * int(*rate);
                }
            }
        }
        let e = &g.edges()[chosen];
        dsu.union(e.u, e.v);
        added.push(e.id);
    }

    let mut kept: BTreeSet<usize> = added.iter().copied().collect();
    for id in added.iter().rev() {
        kept.remove(id);
        if !connects_all(g, &kept, pairs) {
            kept.insert(*id);
        }
    }
    g.edge_set(kept)
}

fn active_components(dsu: &mut DisjointSet, pairs: &[Pair]) -> BTreeSet<usize> {
    let mut active = BTreeSet::new();
    for p in pairs {
        let (a, b) = (dsu.find(p.s), dsu.find(p.t));
        if a != b {
            active.insert(a);
            active.insert(b);
        }
    }
    active
}

pub(crate) fn connects_all(g: &WeightedGraph, ids: &BTreeSet<usize>, pairs: &[Pair]) -> bool {
    let mut dsu = g.components_of(ids);
    pairs.iter().all(|p| dsu.same(p.s, p.t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(list: &[(usize, usize)]) -> Vec<Pair> {
        list.iter()
            .enumerate()
            .map(|(id, &(s, t))| Pair { id, s, t })
            .collect()
    }

    #[test]
    fn separate_components_take_forced_edges() {
        let g = WeightedGraph::new(4, vec![(0, 1, int(1)), (2, 3, int(2))]).unwrap();
        let f = gw_steiner_forest(&g, &pairs(&[(0, 1), (2, 3)])).unwrap();
        assert_eq!(f.cost, int(3));
    }

    #[test]
    fn interleaved_pairs_on_a_path() {
        let g = WeightedGraph::new(4, vec![(0, 1, int(1)), (1, 2, int(1)), (2, 3, int(1))]).unwrap();
        let f = gw_steiner_forest(&g, &pairs(&[(0, 2), (1, 3)])).unwrap();
        assert_eq!(f.cost, int(3));
        assert_eq!(f.ids.len(), 3);
    }

    #[test]
    fn no_pairs_no_edges() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(1))]).unwrap();
        assert_eq!(gw_steiner_forest(&g, &[]).unwrap(), EdgeSet::empty());
    }

    #[test]
    fn direct_edge_tightens_before_the_detour() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(2)), (1, 2, int(2)), (0, 2, int(3))]).unwrap();
        let f = gw_steiner_forest(&g, &pairs(&[(0, 2)])).unwrap();
        assert_eq!(f.cost, int(3));
    }

    #[test]
    fn unreachable_pair_errors() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(1))]).unwrap();
        assert_eq!(
            gw_steiner_forest(&g, &pairs(&[(0, 2)])),
            Err(Error::Disconnected(0, 2))
        );
    }
}
