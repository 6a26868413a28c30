use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed schedule: {0}")]
    MalformedSchedule(String),
    #[error("trivial instance: the final requirement is empty, optimal value is 0")]
    TrivialInstance,
    #[error("missing residual for ground unit {0}")]
    MissingResidual(usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(usize, usize),
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("instance exceeds oracle limits: {0}")]
    TooLarge(String),
    #[error("bad generator parameters: {0}")]
    BadParameters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("infeasible strategy: final requirement not met")]
    Infeasible,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
