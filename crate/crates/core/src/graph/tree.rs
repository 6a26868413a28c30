use super::{DisjointSet, EdgeSet, ShortestPaths, WeightedGraph};
use crate::error::{Error, Result};
use crate::rational::Rational;
use std::collections::{BTreeMap, BTreeSet};

/// Metric-closure MST Steiner tree (a 2-approximation).
///
/// Closure edges are expanded into shortest paths, each underlying edge is
/// kept once, and non-terminal leaves are pruned until none remain.
pub fn mst_steiner_tree(g: &WeightedGraph, terminals: &BTreeSet<usize>) -> Result<EdgeSet> {
    let terms: Vec<usize> = terminals.iter().copied().collect();
    if terms.len() <= 1 {
        return Ok(EdgeSet::empty());
    }
    let runs: Vec<ShortestPaths> = terms.iter().map(|&t| ShortestPaths::run(g, &[t])).collect();
    let mut closure: Vec<(Rational, usize, usize)> = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let d = runs[i].dist[terms[j]]
                .clone()
                .ok_or(Error::Disconnected(terms[i], terms[j]))?;
            closure.push((d, i, j));
        }
    }
    closure.sort();
    let mut dsu = DisjointSet::new(terms.len());
    let mut chosen = BTreeSet::new();
    for (_, i, j) in closure {
        if dsu.union(i, j) {
            chosen.extend(runs[i].path_to(terms[j]).expect("reachable"));
        }
    }
    prune_leaves(g, &mut chosen, terminals);
    g.edge_set(chosen)
}

/// Drops edges hanging off non-terminal degree-one vertices, repeatedly.
pub(crate) fn prune_leaves(g: &WeightedGraph, ids: &mut BTreeSet<usize>, keep: &BTreeSet<usize>) {
    loop {
        let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &id in ids.iter() {
            let e = g.edge(id).expect("edge ids come from g");
            incident.entry(e.u).or_default().push(id);
            incident.entry(e.v).or_default().push(id);
        }
        let leaf_edges: Vec<usize> = incident
            .iter()
            .filter(|(v, es)| es.len() == 1 && !keep.contains(v))
            .map(|(_, es)| es[0])
            .collect();
        if leaf_edges.is_empty() {
            return;
        }
        for id in leaf_edges {
            ids.remove(&id);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn triangle_uses_two_cheap_edges() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(3))]).unwrap();
        let t = mst_steiner_tree(&g, &[0, 2].into()).unwrap();
        assert_eq!(t.cost, int(2));
        assert_eq!(t.to_vec(), vec![0, 1]);
    }

    #[test]
    fn single_terminal_is_free() {
        let g = WeightedGraph::new(2, vec![(0, 1, int(1))]).unwrap();
        assert_eq!(mst_steiner_tree(&g, &[1].into()).unwrap(), EdgeSet::empty());
    }

    #[test]
    fn star_takes_every_spoke() {
        let g = WeightedGraph::new(4, vec![(0, 1, int(10)), (0, 2, int(10)), (0, 3, int(10))]).unwrap();
        let t = mst_steiner_tree(&g, &[1, 2, 3].into()).unwrap();
        assert_eq!(t.cost, int(30));
    }

    #[test]
    fn disconnected_terminals_error() {
        let g = WeightedGraph::new(3, vec![(0, 1, int(1))]).unwrap();
        assert_eq!(
            mst_steiner_tree(&g, &[0, 2].into()),
            Err(Error::Disconnected(0, 2))
        );
    }
}
