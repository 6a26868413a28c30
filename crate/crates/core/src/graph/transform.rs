use super::{DisjointSet, Edge, Pair, WeightedGraph};
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Same graph with the listed edges made free.
pub fn zero_edges(g: &WeightedGraph, ids: &BTreeSet<usize>) -> Result<WeightedGraph> {
    check_known(g, ids)?;
    let mut out = g.clone();
    for e in &mut out.edges {
        if ids.contains(&e.id) {
            e.cost = Rational::zero();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceMode {
    Delete,
    Contract,
}

/// A reduced graph together with how old vertices map into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contracted {
    pub graph: WeightedGraph,
    /// Old vertex id to new vertex id.
    pub merge_map: Vec<usize>,
    /// Old non-root vertices that now coincide with the root.
    pub merged_into_root: Vec<usize>,
    /// Pairs whose endpoints were merged (already connected).
    pub satisfied_pairs: Vec<usize>,
}

pub fn delete_or_contract(g: &WeightedGraph, ids: &BTreeSet<usize>, mode: ReduceMode) -> Result<Contracted> {
    check_known(g, ids)?;
    match mode {
        ReduceMode::Delete => {
            let mut graph = g.clone();
            graph.edges.retain(|e| !ids.contains(&e.id));
            Ok(Contracted {
                graph,
                merge_map: g.vertices(),
                merged_into_root: Vec::new(),
                satisfied_pairs: Vec::new(),
            })
        }
        ReduceMode::Contract => {
            let mut dsu = DisjointSet::new(g.vertex_count());
            for e in g.edges() {
                if ids.contains(&e.id) {
                    dsu.union(e.u, e.v);
                }
            }
            let labels = dsu.canonical_labels();
            let mut compact = vec![usize::MAX; g.vertex_count()];
            let mut next = 0;
            for v in 0..g.vertex_count() {
                if labels[v] == v {
                    compact[v] = next;
                    next += 1;
                }
            }
            let merge_map: Vec<usize> = (0..g.vertex_count()).map(|v| compact[labels[v]]).collect();
            let edges = g
                .edges()
                .iter()
                .filter(|e| !ids.contains(&e.id) && merge_map[e.u] != merge_map[e.v])
                .map(|e| Edge {
                    id: e.id,
                    u: merge_map[e.u],
                    v: merge_map[e.v],
                    cost: e.cost.clone(),
                })
                .collect();
            let mut graph = WeightedGraph::from_edges(next, edges)?;
            graph.root = g.root.map(|r| merge_map[r]);
            graph.pairs = g
                .pairs
                .iter()
                .map(|p| Pair {
                    id: p.id,
                    s: merge_map[p.s],
                    t: merge_map[p.t],
                })
                .collect();
            let merged_into_root = match g.root {
                Some(r) => (0..g.vertex_count())
                    .filter(|&v| v != r && merge_map[v] == merge_map[r])
                    .collect(),
                None => Vec::new(),
            };
            let satisfied_pairs = g
                .pairs
                .iter()
                .filter(|p| p.s != p.t && merge_map[p.s] == merge_map[p.t])
                .map(|p| p.id)
                .collect();
            Ok(Contracted {
                graph,
                merge_map,
                merged_into_root,
                satisfied_pairs,
            })
        }
    }
}

fn check_known(g: &WeightedGraph, ids: &BTreeSet<usize>) -> Result<()> {
    match ids.iter().find(|&&id| g.edge(id).is_none()) {
        Some(&id) => Err(Error::UnknownEdge(id)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{min_cut, shortest_dist};
    use crate::rational::int;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(3))]).unwrap()
    }

    #[test]
    fn zeroing_shortens_distances() {
        let g = zero_edges(&triangle(), &[2].into()).unwrap();
        assert_eq!(shortest_dist(&g, 0)[2], Some(int(0)));
        assert_eq!(zero_edges(&triangle(), &BTreeSet::new()).unwrap(), triangle());
        let all = zero_edges(&triangle(), &[0, 1, 2].into()).unwrap();
        assert!(shortest_dist(&all, 1).iter().all(|d| d == &Some(int(0))));
        assert_eq!(zero_edges(&triangle(), &[9].into()), Err(Error::UnknownEdge(9)));
    }

    #[test]
    fn contracting_the_root_edge_keeps_the_rest() {
        // ρ=0 – a=1 – b=2
        let g = WeightedGraph::new(3, vec![(0, 1, int(2)), (1, 2, int(5))])
            .unwrap()
            .with_root(0)
            .unwrap();
        let c = delete_or_contract(&g, &[0].into(), ReduceMode::Contract).unwrap();
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.merged_into_root, vec![1]);
        let b = c.merge_map[2];
        let (value, cut) = min_cut(&c.graph, c.graph.root.unwrap(), &[b].into()).unwrap();
        assert_eq!(value, int(5));
        assert_eq!(cut.to_vec(), vec![1]);
    }

    #[test]
    fn deleting_everything_leaves_isolated_vertices() {
        let c = delete_or_contract(&triangle(), &[0, 1, 2].into(), ReduceMode::Delete).unwrap();
        assert!(c.graph.edges().is_empty());
        assert_eq!(c.graph.vertex_count(), 3);
    }

    #[test]
    fn contraction_reports_satisfied_pairs() {
        let g = triangle().with_pairs(vec![(0, 1), (0, 2)]).unwrap();
        let c = delete_or_contract(&g, &[0].into(), ReduceMode::Contract).unwrap();
        assert_eq!(c.satisfied_pairs, vec![0]);
        // the parallel edges 1-2 and 0-2 both survive
        assert_eq!(c.graph.edges().len(), 2);
    }
}
