//! Exact-rational graph primitives shared by the cut and Steiner solvers.

mod flow;
mod forest;
mod paths;
mod preprocess;
mod transform;
mod tree;
mod union_find;

pub use flow::min_cut;
pub use forest::gw_steiner_forest;
pub use paths::{shortest_dist, ShortestPaths};
pub(crate) use preprocess::solve_over_f_guesses;
pub use preprocess::{preprocess_appendix_a, PreprocessKind, Preprocessed};
pub use transform::{delete_or_contract, zero_edges, Contracted, ReduceMode};
pub use tree::mst_steiner_tree;
pub use union_find::DisjointSet;

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub cost: Rational,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub id: usize,
    pub s: usize,
    pub t: usize,
}

/// Undirected multigraph with stable edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    pub root: Option<usize>,
    pub pairs: Vec<Pair>,
}

impl WeightedGraph {
    /// Edge ids are list positions.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, Rational)>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, cost))| Edge { id, u, v, cost })
            .collect();
        Self::from_edges(vertex_count, edges)
    }

    pub fn from_edges(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_by_key(|e| e.id);
        for (i, e) in edges.iter().enumerate() {
            if i > 0 && edges[i - 1].id == e.id {
                return Err(Error::InvalidInstance(format!("duplicate edge id {}", e.id)));
            }
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidInstance(format!(
                    "edge {} has an unknown endpoint",
                    e.id
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("edge {} is a self-loop", e.id)));
            }
            if e.cost < Rational::zero() {
                return Err(Error::InvalidInstance(format!("edge {} has negative cost", e.id)));
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            root: None,
            pairs: Vec::new(),
        })
    }

    pub fn with_root(mut self, root: usize) -> Result<Self> {
        if root >= self.vertex_count {
            return Err(Error::InvalidInstance(format!("root {root} out of range")));
        }
        self.root = Some(root);
        Ok(self)
    }

    pub fn with_pairs(mut self, pairs: Vec<(usize, usize)>) -> Result<Self> {
        self.pairs = pairs
            .into_iter()
            .enumerate()
            .map(|(id, (s, t))| Pair { id, s, t })
            .collect();
        if let Some(p) = self
            .pairs
            .iter()
            .find(|p| p.s >= self.vertex_count || p.t >= self.vertex_count)
        {
            return Err(Error::InvalidInstance(format!(
                "pair {} has an unknown endpoint",
                p.id
            )));
        }
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn edge_index(&self, id: usize) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).collect()
    }

    /// Non-root vertices, the ground units of a cut instance.
    pub fn non_root_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&v| Some(v) != self.root).collect()
    }

    pub fn pair_ids(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.id).collect()
    }

    pub fn pair(&self, id: usize) -> Option<&Pair> {
        self.pairs.iter().find(|p| p.id == id)
    }

    /// Incident `(edge index, neighbour)` lists.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((i, e.v));
            adj[e.v].push((i, e.u));
        }
        adj
    }

    pub fn edge_set(&self, ids: impl IntoIterator<Item = usize>) -> Result<EdgeSet> {
        let ids: BTreeSet<usize> = ids.into_iter().collect();
        let mut cost = Rational::zero();
        for &id in &ids {
            cost += &self.edge(id).ok_or(Error::UnknownEdge(id))?.cost;
        }
        Ok(EdgeSet { ids, cost })
    }

    /// Components of the subgraph formed by the given edge ids.
    pub fn components_of(&self, ids: &BTreeSet<usize>) -> DisjointSet {
        let mut dsu = DisjointSet::new(self.vertex_count);
        for e in &self.edges {
            if ids.contains(&e.id) {
                dsu.union(e.u, e.v);
            }
        }
        dsu
    }
}

/// A set of edge ids with its total cost.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    pub ids: BTreeSet<usize>,
    pub cost: Rational,
}

impl EdgeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.ids.iter().copied().collect()
    }
}
