//! Ground truth for tiny instances.
//!
//! Everything here is exponential. [`SizeLimits`] is checked before any
//! enumeration starts.

mod exact;
mod exhaustive;
mod game;
mod minimax;

pub use exact::{exact_cover, exact_cover_with, exact_cut, exact_forest, exact_steiner};
pub use exhaustive::{evaluate_in_game, evaluate_strategy, exhaustive_robcov, PlanStrategy, Strategy};
pub use game::{bits, full, subsets_of_size, Game, Mask, MAX_BITS};
pub use minimax::{
    minimax_opt, minimax_value, minimax_with, MinimaxOptions, MinimaxResult, MinimaxSolver, TraceNode, Value,
};

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::rational::Rational;

/// Purchase subsets are materialized, so the action count is capped
/// regardless of the configured limits.
pub const MAX_ENUMERATED_ACTIONS: usize = 22;

pub(crate) fn check_enumerable(actions: usize) -> Result<()> {
    if actions > MAX_ENUMERATED_ACTIONS {
        return Err(Error::TooLarge(format!(
            "{actions} actions, at most {MAX_ENUMERATED_ACTIONS} can be enumerated"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimits {
    pub max_units: usize,
    pub max_actions: usize,
    pub max_horizon: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        Self {
            max_units: 8,
            max_actions: 12,
            max_horizon: 3,
        }
    }
}

impl SizeLimits {
    pub fn check(&self, units: usize, actions: usize, horizon: usize) -> Result<()> {
        let over = [
            ("ground units", units, self.max_units),
            ("actions", actions, self.max_actions),
            ("days", horizon, self.max_horizon),
        ]
        .into_iter()
        .find(|(_, n, max)| n > max);
        match over {
            Some((what, n, max)) => Err(Error::TooLarge(format!("{n} {what}, limit {max}"))),
            None => Ok(()),
        }
    }
}

/// Bounds on the optimal worst case: `lb <= opt <= ub`.
pub fn opt_bounds(instance: &ProblemInstance) -> Result<(Rational, Rational)> {
    instance.opt_bounds()
}
