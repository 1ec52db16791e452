use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("subgraph is not induced in the given parent graph: {0}")]
    NotInduced(String),
    #[error("orientation is not acyclic")]
    NotAcyclic,
    #[error("graph is not connected")]
    NotConnected,
    #[error("subgraph is not biconnected")]
    NotBiconnected,
    #[error("vertex {0} missing from the function table")]
    MissingVertex(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("divergent series: {0}")]
    Divergent(String),
    #[error("no convergence bound for the requested evaluation: {0}")]
    NoConvergenceBound(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("expansion requires r < rho")]
    PropagatorRange,
    #[error("divergent configuration: singularity order {order} along {subgraph}")]
    DivergentConfiguration { order: i64, subgraph: String },
    #[error("parse error: {0}")]
    Parse(String),
}
