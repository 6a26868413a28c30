//! Exact single-stage optima by enumeration, cheapest subsets first.

use super::game::{Game, Mask};
use super::SizeLimits;
use crate::error::{Error, Result};
use crate::graph::{Pair, WeightedGraph};
use crate::rational::Rational;
use crate::setcover::SetSystem;
use std::collections::BTreeSet;

fn solve(game: &Game, active: Mask, limits: &SizeLimits) -> Result<(Vec<usize>, Rational)> {
    if game.action_count() > limits.max_actions {
        return Err(Error::TooLarge(format!(
            "{} actions, limit {}",
            game.action_count(),
            limits.max_actions
        )));
    }
    super::check_enumerable(game.action_count())?;
    let order = game.purchase_order();
    let (mask, cost) = game.min_completion(&order, 0, active).ok_or(Error::Infeasible)?;
    Ok((game.actions_of(mask), cost))
}

/// Cheapest subcollection covering `targets`, with the chosen set ids.
pub fn exact_cover_with(
    system: &SetSystem,
    targets: &BTreeSet<usize>,
    limits: &SizeLimits,
) -> Result<(Vec<usize>, Rational)> {
    let game = Game::cover(system)?;
    solve(&game, game.unit_mask(targets)?, limits)
}

pub fn exact_cover(system: &SetSystem, targets: &BTreeSet<usize>, limits: &SizeLimits) -> Result<Rational> {
    Ok(exact_cover_with(system, targets, limits)?.1)
}

pub fn exact_steiner(
    g: &WeightedGraph,
    terminals: &BTreeSet<usize>,
    limits: &SizeLimits,
) -> Result<Rational> {
    let game = Game::tree(g)?;
    Ok(solve(&game, game.unit_mask(terminals)?, limits)?.1)
}

pub fn exact_forest(g: &WeightedGraph, pairs: &[Pair], limits: &SizeLimits) -> Result<Rational> {
    let game = Game::forest(g, pairs)?;
    let ids: Vec<usize> = pairs.iter().map(|p| p.id).collect();
    Ok(solve(&game, game.unit_mask(&ids)?, limits)?.1)
}

/// Cheapest edge set separating every terminal from `root`.
pub fn exact_cut(
    g: &WeightedGraph,
    root: usize,
    terminals: &BTreeSet<usize>,
    limits: &SizeLimits,
) -> Result<Rational> {
    if terminals.contains(&root) {
        return Err(Error::InvalidInstance("the root cannot be a terminal".into()));
    }
    let game = Game::cut(g, root)?;
    Ok(solve(&game, game.unit_mask(terminals)?, limits)?.1)
}
