use super::WeightedGraph;
use crate::rational::Rational;
use num_traits::Zero;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Result of a (multi-source) Dijkstra run. `None` distance means unreachable.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub dist: Vec<Option<Rational>>,
    /// `(edge index, previous vertex)` on a shortest path tree.
    pred: Vec<Option<(usize, usize)>>,
    edge_ids: Vec<usize>,
}

impl ShortestPaths {
    pub fn run(g: &WeightedGraph, sources: &[usize]) -> Self {
        let n = g.vertex_count();
        let adj = g.adjacency();
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut pred = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(Rational::zero());
                heap.push(Reverse((Rational::zero(), s)));
            }
        }
        while let Some(Reverse((d, x))) = heap.pop() {
            if done[x] {
                continue;
            }
            done[x] = true;
            for &(ei, y) in &adj[x] {
                if done[y] {
                    continue;
                }
                let candidate = &d + &g.edges()[ei].cost;
                let improves = dist[y].as_ref().is_none_or(|cur| &candidate < cur);
                if improves {
                    dist[y] = Some(candidate.clone());
                    pred[y] = Some((ei, x));
                    heap.push(Reverse((candidate, y)));
                }
            }
        }
        Self {
            dist,
            pred,
            edge_ids: g.edges().iter().map(|e| e.id).collect(),
        }
    }

    /// Edge ids of the tree path from the nearest source to `target`.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.dist[target].as_ref()?;
        let mut path = Vec::new();
        let mut x = target;
        while let Some((ei, prev)) = self.pred[x] {
            path.push(self.edge_ids[ei]);
            x = prev;
        }
        path.reverse();
        Some(path)
    }
}

/// Exact single-source distances.
pub fn shortest_dist(g: &WeightedGraph, source: usize) -> Vec<Option<Rational>> {
    ShortestPaths::run(g, &[source]).dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(3))]).unwrap()
    }

    #[test]
    fn triangle_prefers_two_hops() {
        let sp = ShortestPaths::run(&triangle(), &[0]);
        assert_eq!(sp.dist[2], Some(int(2)));
        assert_eq!(sp.path_to(2), Some(vec![0, 1]));
    }

    #[test]
    fn isolated_source_reaches_nothing() {
        let g = WeightedGraph::new(3, vec![(1, 2, int(1))]).unwrap();
        let d = shortest_dist(&g, 0);
        assert_eq!(d, vec![Some(int(0)), None, None]);
    }

    #[test]
    fn path_length() {
        let edges = (0..5).map(|i| (i, i + 1, int(1))).collect();
        let g = WeightedGraph::new(6, edges).unwrap();
        assert_eq!(shortest_dist(&g, 0)[5], Some(int(5)));
        assert_eq!(ShortestPaths::run(&g, &[0]).path_to(5).unwrap().len(), 5);
    }

    #[test]
    fn multi_source_takes_nearest() {
        let edges = (0..4).map(|i| (i, i + 1, int(2))).collect();
        let g = WeightedGraph::new(5, edges).unwrap();
        let sp = ShortestPaths::run(&g, &[0, 4]);
        assert_eq!(sp.dist[3], Some(int(2)));
        assert_eq!(sp.path_to(3), Some(vec![3]));
    }
}
