use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::model::{Schedule, Solution, SolveOptions, UncertaintySpec};
use crate::rational::Rational;
use crate::setcover::SetSystem;
use crate::{mincut, steiner};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProblemKind {
    SetCover,
    MinCut,
    SteinerTree,
    SteinerForest,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [
        ProblemKind::SetCover,
        ProblemKind::MinCut,
        ProblemKind::SteinerTree,
        ProblemKind::SteinerForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::SetCover => "setcover",
            ProblemKind::MinCut => "mincut",
            ProblemKind::SteinerTree => "steinertree",
            ProblemKind::SteinerForest => "steinerforest",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown problem {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    SetCover(SetSystem),
    /// Graph must carry a root.
    MinCut(WeightedGraph),
    SteinerTree(WeightedGraph),
    /// Graph must carry the demand pairs.
    SteinerForest(WeightedGraph),
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::SetCover(_) => ProblemKind::SetCover,
            Problem::MinCut(_) => ProblemKind::MinCut,
            Problem::SteinerTree(_) => ProblemKind::SteinerTree,
            Problem::SteinerForest(_) => ProblemKind::SteinerForest,
        }
    }

    /// Set cover: elements. Cut: non-root vertices. Tree: vertices. Forest: pair ids.
    pub fn ground_units(&self) -> Vec<usize> {
        match self {
            Problem::SetCover(s) => s.elements(),
            Problem::MinCut(g) => g.non_root_vertices(),
            Problem::SteinerTree(g) => g.vertices(),
            Problem::SteinerForest(g) => g.pair_ids(),
        }
    }

    /// Costs of the purchasable actions (sets or edges), by position.
    pub fn action_costs(&self) -> Vec<Rational> {
        match self {
            Problem::SetCover(s) => s.sets().iter().map(|set| set.cost.clone()).collect(),
            Problem::MinCut(g) | Problem::SteinerTree(g) | Problem::SteinerForest(g) => {
                g.edges().iter().map(|e| e.cost.clone()).collect()
            }
        }
    }

    /// Action ids as reported by plans: set indices or edge ids, by position.
    pub fn action_ids(&self) -> Vec<usize> {
        match self {
            Problem::SetCover(s) => (0..s.sets().len()).collect(),
            Problem::MinCut(g) | Problem::SteinerTree(g) | Problem::SteinerForest(g) => {
                g.edges().iter().map(|e| e.id).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub problem: Problem,
    pub schedule: Schedule,
    pub uncertainty: UncertaintySpec,
}

impl ProblemInstance {
    pub fn new(problem: Problem, schedule: Schedule, uncertainty: UncertaintySpec) -> Result<Self> {
        let instance = Self {
            problem,
            schedule,
            uncertainty,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn cardinality(problem: Problem, schedule: Schedule) -> Result<Self> {
        Self::new(problem, schedule, UncertaintySpec::Cardinality)
    }

    pub fn ground_units(&self) -> Vec<usize> {
        self.problem.ground_units()
    }

    pub fn validate(&self) -> Result<()> {
        match &self.problem {
            Problem::MinCut(g) if g.root.is_none() => {
                return Err(Error::InvalidInstance("min-cut instance needs a root".into()))
            }
            _ => {}
        }
        let ground = self.ground_units();
        self.schedule.validate(ground.len())?;
        self.uncertainty.validate(&self.schedule, &ground)
    }

    /// Runs the thrifty solver for the problem. The solvers assume
    /// cardinality uncertainty.
    pub fn solve(&self, options: &SolveOptions) -> Result<Solution> {
        if self.uncertainty != UncertaintySpec::Cardinality {
            return Err(Error::Unsupported(
                "thrifty solvers are defined for cardinality uncertainty only".into(),
            ));
        }
        match &self.problem {
            Problem::SetCover(s) => s.solve(&self.schedule, options),
            Problem::MinCut(g) => mincut::solve(g, &self.schedule, options),
            Problem::SteinerTree(g) => steiner::solve_tree(g, &self.schedule, options),
            Problem::SteinerForest(g) => steiner::solve_forest(g, &self.schedule, options),
        }
    }

    /// Lower and upper bounds on the optimal worst case, used as the ends of
    /// the guess grid.
    pub fn opt_bounds(&self) -> Result<(Rational, Rational)> {
        let needed = match self.problem {
            Problem::SteinerTree(_) => 2,
            _ => 1,
        };
        if self.schedule.final_k() < needed {
            return Err(Error::TrivialInstance);
        }
        match &self.problem {
            Problem::SetCover(s) => Ok(s.opt_bounds()),
            Problem::MinCut(g) => mincut::opt_bounds(g),
            Problem::SteinerTree(g) => steiner::tree_opt_bounds(g),
            Problem::SteinerForest(g) => steiner::forest_opt_bounds(g),
        }
    }
}
