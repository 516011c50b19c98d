use thiserror::Error;

use crate::cyclic::KSubset;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("labels {0} and {1} are not weakly separated")]
    CrossingPair(KSubset, KSubset),

    #[error("labels {0} and {1} embed to the same point")]
    EmbeddingDegenerate(KSubset, KSubset),

    #[error("vertex {label} is not mutable (valency {valency})")]
    NotMutable { label: String, valency: usize },

    #[error("vertex {0} is frozen")]
    Frozen(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("collection is not rotation invariant")]
    NotSymmetric,

    #[error("orbit of {0} has arrows between its members")]
    OrbitNotIndependent(String),

    #[error("vertex {0} is neither a strict source nor a strict sink for the cut")]
    NotStrict(String),

    #[error("not a cut: {0}")]
    InvalidCut(String),

    #[error("path quotient did not stabilise below degree {0}")]
    NoStabilization(usize),

    #[error("no homogeneous grading: {0}")]
    NoGrading(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
