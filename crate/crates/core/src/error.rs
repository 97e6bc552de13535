use thiserror::Error;

use crate::graph::Color;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node {0} has no outgoing edge")]
    ZeroOutDegree(usize),
    #[error("out-weights of node {node} sum to {sum}, not 1")]
    NonStochasticRow { node: usize, sum: f64 },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("node {0} has no color")]
    UnknownColor(usize),
    #[error("node {0} is not in the graph")]
    UnknownNode(usize),
    #[error("edge weight {weight} on ({src}, {dst}) is outside (0, 1]")]
    InvalidWeight { src: usize, dst: usize, weight: f64 },
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("edge ({0}, {1}) already exists")]
    EdgeExists(usize, usize),
    #[error("edge ({0}, {1}) joins nodes of the same color")]
    SameColorEndpoints(usize, usize),
    #[error("target {target} is in the avoid set of source {start}")]
    TargetInAvoidSet { start: usize, target: usize },
    #[error("source and target are both node {0}")]
    SourceIsTarget(usize),
    #[error("node set mixes colors")]
    MixedColorSet,
    #[error("source set is empty")]
    EmptySourceSet,
    #[error("node set is empty")]
    EmptyNodeSet,
    #[error("horizon must be at least 1")]
    InvalidHorizon,
    #[error("enumeration of {plans} plans exceeds the cap of {cap}")]
    EnumerationTooLarge { plans: u128, cap: u128 },
    #[error("thresholds must satisfy 1 <= theta_good < theta_bad <= t (got {good}, {bad}, t={t})")]
    ThresholdOrder { good: f64, bad: f64, t: usize },
    #[error("accuracy parameter {name}={value} out of range")]
    InvalidAccuracy { name: &'static str, value: f64 },
    #[error("restart budget must be at least 1")]
    InvalidRestartBudget,
    #[error("neither color has parochial nodes but the budget is {0}")]
    BothColorsUnbiased(usize),
    #[error("graph has no node of color {0:?}")]
    NoOppositeColor(Color),
    #[error("no legal target remains for source {0}")]
    NoLegalTarget(usize),
    #[error("top-N percentage {0} must lie in (0, 100)")]
    InvalidPercentage(f64),
    #[error("element {0} belongs to no set")]
    UncoveredElement(usize),
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("no records to emit")]
    EmptyRecords,
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
