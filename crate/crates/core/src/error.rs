use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid N-set: {0}")]
    InvalidNSet(String),

    #[error("not an N-graph: node `{node}` has {indegree} incoming arcs (expected exactly 1)")]
    NotAnNGraph { node: String, indegree: usize },

    /// An exhaustive search visited more candidate assignments than allowed.
    #[error("search budget of {limit} nodes exhausted")]
    BudgetExceeded { limit: u64 },

    /// The ghost sequence is not the census of any almost-finite Z-set.
    #[error("ghost sequence not realizable at n = {n}: {reason}")]
    NotRealizable { n: usize, reason: String },

    #[error("zeta coefficient z_{index} = {value} is not an integer")]
    IntegralityViolation { index: usize, value: String },

    #[error("internal consistency check failed: {0}")]
    InternalInconsistency(String),

    #[error("incompatible morphisms: {0}")]
    Incompatible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
