use thiserror::Error;

/// Errors produced by graph ingestion, evaluation and search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex label {0}")]
    UnknownLabel(u64),

    #[error("invalid weight {weight} for vertex {label}: weights must be finite and non-negative")]
    InvalidWeight { label: u64, weight: f64 },

    #[error("influence value of an empty vertex set is undefined")]
    EmptySet,

    #[error("balanced density is singular: w(H) equals w(V \\ H)")]
    Singularity,

    #[error("unsupported function {kind}: {reason}")]
    UnsupportedFunction { kind: String, reason: &'static str },

    #[error("vertex {0} is not a member of the subgraph")]
    NotAMember(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("refusing to enumerate {n} vertices (cap {cap}); pass the override to proceed")]
    TooLarge { n: usize, cap: usize },

    #[error("reference result list is empty")]
    EmptyReference,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
