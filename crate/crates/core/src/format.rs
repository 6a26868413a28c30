//! JSON instance documents.
//!
//! ```json
//! {"problem": "mincut",
//!  "schedule": {"T": 1, "k": [2, 1], "lambda": ["1", "5"]},
//!  "uncertainty": {"kind": "cardinality"},
//!  "graph": {"n": 3, "edges": [[0, 1, "10"], [0, 2, "1"]], "root": 0}}
//! ```
//!
//! Set cover instances carry `"sets": [{"members": [...], "cost": "7/5"}]`
//! instead of `"graph"`; forest graphs carry `"pairs": [[s, t], ...]`.
//! Edge ids are positions in the edge list.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::instance::{Problem, ProblemInstance, ProblemKind};
use crate::model::{Schedule, UncertaintySpec};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::setcover::{SetSystem, WeightedSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub problem: String,
    pub schedule: ScheduleDoc,
    #[serde(default)]
    pub uncertainty: UncertaintyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<SetDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDoc {
    #[serde(rename = "T")]
    pub horizon: usize,
    pub k: Vec<usize>,
    pub lambda: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum UncertaintyDoc {
    #[default]
    Cardinality,
    Subset {
        parts: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub members: Vec<usize>,
    pub cost: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(usize, usize)>>,
}

fn field<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::InvalidInstance(format!("{path}: {e}")))
}

fn rational_at(path: String, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::InvalidInstance(format!("{path}: {e}")))
}

impl InstanceFile {
    pub fn from_instance(instance: &ProblemInstance) -> Self {
        let s = &instance.schedule;
        let schedule = ScheduleDoc {
            horizon: s.horizon(),
            k: s.cardinalities.clone(),
            lambda: s.inflations.iter().map(format_rational).collect(),
        };
        let uncertainty = match &instance.uncertainty {
            UncertaintySpec::Cardinality => UncertaintyDoc::Cardinality,
            UncertaintySpec::SubsetKRobust { parts } => UncertaintyDoc::Subset { parts: parts.clone() },
        };
        let graph_doc = |g: &WeightedGraph, root: Option<usize>, pairs: bool| GraphDoc {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.u, e.v, format_rational(&e.cost)))
                .collect(),
            root,
            pairs: pairs.then(|| g.pairs.iter().map(|p| (p.s, p.t)).collect()),
        };
        let (sets, graph) = match &instance.problem {
            Problem::SetCover(system) => (
                Some(
                    system
                        .sets()
                        .iter()
                        .map(|set| SetDoc {
                            members: set.members.clone(),
                            cost: format_rational(&set.cost),
                        })
                        .collect(),
                ),
                None,
            ),
            Problem::MinCut(g) => (None, Some(graph_doc(g, g.root, false))),
            Problem::SteinerTree(g) => (None, Some(graph_doc(g, None, false))),
            Problem::SteinerForest(g) => (None, Some(graph_doc(g, None, true))),
        };
        Self {
            problem: instance.problem.kind().name().to_string(),
            schedule,
            uncertainty,
            sets,
            graph,
        }
    }

    pub fn to_instance(&self) -> Result<ProblemInstance> {
        let kind: ProblemKind = field("problem", self.problem.parse())?;
        if self.schedule.k.len() != self.schedule.horizon + 1 {
            return Err(Error::InvalidInstance(format!(
                "schedule.k: expected T + 1 = {} entries, got {}",
                self.schedule.horizon + 1,
                self.schedule.k.len()
            )));
        }
        let lambda = self
            .schedule
            .lambda
            .iter()
            .enumerate()
            .map(|(i, text)| rational_at(format!("schedule.lambda[{i}]"), text))
            .collect::<Result<Vec<_>>>()?;
        let schedule = Schedule::new(self.schedule.k.clone(), lambda);

        let problem = match kind {
            ProblemKind::SetCover => {
                if self.graph.is_some() {
                    return Err(Error::InvalidInstance("graph: not allowed for setcover".into()));
                }
                let docs = self
                    .sets
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInstance("sets: missing".into()))?;
                let sets = docs
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        Ok(WeightedSet {
                            members: d.members.clone(),
                            cost: rational_at(format!("sets[{i}].cost"), &d.cost)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let n = sets
                    .iter()
                    .flat_map(|s| s.members.iter().map(|e| e + 1))
                    .max()
                    .unwrap_or(0);
                Problem::SetCover(field("sets", SetSystem::new(n, sets))?)
            }
            _ => {
                if self.sets.is_some() {
                    return Err(Error::InvalidInstance(format!("sets: not allowed for {kind}")));
                }
                let doc = self
                    .graph
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInstance("graph: missing".into()))?;
                let edges = doc
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(i, (u, v, c))| Ok((*u, *v, rational_at(format!("graph.edges[{i}][2]"), c)?)))
                    .collect::<Result<Vec<_>>>()?;
                let mut g = field("graph", WeightedGraph::new(doc.n, edges))?;
                match kind {
                    ProblemKind::MinCut => {
                        let root = doc.root.ok_or_else(|| {
                            Error::InvalidInstance("graph.root: required for mincut".into())
                        })?;
                        g = field("graph.root", g.with_root(root))?;
                        Problem::MinCut(g)
                    }
                    ProblemKind::SteinerTree => Problem::SteinerTree(g),
                    _ => {
                        let pairs = doc.pairs.clone().ok_or_else(|| {
                            Error::InvalidInstance("graph.pairs: required for steinerforest".into())
                        })?;
                        Problem::SteinerForest(field("graph.pairs", g.with_pairs(pairs))?)
                    }
                }
            }
        };
        let uncertainty = match &self.uncertainty {
            UncertaintyDoc::Cardinality => UncertaintySpec::Cardinality,
            UncertaintyDoc::Subset { parts } => UncertaintySpec::SubsetKRobust { parts: parts.clone() },
        };
        let instance = ProblemInstance {
            problem,
            schedule,
            uncertainty,
        };
        match instance.validate() {
            Err(Error::MalformedSchedule(m)) => Err(Error::InvalidInstance(format!("schedule: {m}"))),
            Err(e) => Err(e),
            Ok(()) => Ok(instance),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInstance(format!("document: {e}")))?;
    file.to_instance()
}

pub fn instance_to_json(instance: &ProblemInstance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance)).expect("documents serialize")
}
