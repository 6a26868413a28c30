//! Thrifty two-stage approximation algorithms for multistage k-robust
//! covering problems.
//!
//! An adversary reveals, day by day, shrinking supersets of the final
//! demand while action costs inflate. The solvers here act on only two
//! days: day 0, where a problem-specific "net" of dangerous units is
//! handled, and one critical day `j* = argmin λ_j k_j`, where whatever is
//! still active gets completed.
//!
//! | problem | module | net |
//! |---|---|---|
//! | set cover | [`setcover`] | elements whose cheapest set costs `>= τ` |
//! | min cut | [`mincut`] | vertices whose cut exceeds `2Tτ` |
//! | Steiner tree | [`steiner`] | a maximal `4Tτ` ball packing |
//! | Steiner forest | [`steiner`] | a near-maximal `2Tτ` forest net |
//!
//! [`oracle`] computes exact optima of tiny instances by backward
//! induction and evaluates any strategy against every scenario sequence;
//! [`fixtures`] builds the known hard instances and seeded random ones.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod instance;
pub mod mincut;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod setcover;
pub mod steiner;

pub use error::{Error, Result};
pub use instance::{Problem, ProblemInstance, ProblemKind};
pub use model::{
    evaluate_thrifty, CostReport, ScenarioSequence, Schedule, Solution, SolveOptions, ThriftyPlan,
    UncertaintySpec,
};
pub use rational::Rational;
