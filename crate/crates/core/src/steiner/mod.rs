//! Multistage robust Steiner tree and Steiner forest.

mod forest;
mod sfnet;
mod tree;

pub use forest::{forest_opt_bounds, solve_forest, thrifty_forest_plan};
pub use sfnet::{sfnet_build, SfnetResult};
pub use tree::{ball_packing_net, solve_tree, thrifty_tree_plan, tree_opt_bounds};

use crate::error::{Error, Result};
use crate::graph::{shortest_dist, WeightedGraph};
use crate::rational::Rational;

pub const BETA: i64 = 10;

/// All-pairs distances, `None` when unreachable.
pub(crate) fn distance_table(g: &WeightedGraph) -> Vec<Vec<Option<Rational>>> {
    (0..g.vertex_count()).map(|v| shortest_dist(g, v)).collect()
}

pub(crate) fn require_connected(g: &WeightedGraph) -> Result<()> {
    if g.vertex_count() == 0 {
        return Ok(());
    }
    match shortest_dist(g, 0).iter().position(|d| d.is_none()) {
        Some(v) => Err(Error::Disconnected(0, v)),
        None => Ok(()),
    }
}
