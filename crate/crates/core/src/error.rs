use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally malformed input (bad edge, bad permutation, bad field).
    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },

    /// A size guard refused the instance before any expensive enumeration.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// An operation that requires an orderable hypergraph was given one that
    /// is not; carries the residual vertex set at which recognition got stuck.
    #[error("hypergraph is not orderable (no eligible vertex among {stuck:?})")]
    NotOrderable { stuck: Vec<u32> },

    #[error("unsupported edge cardinality k={k}: {reason}")]
    UnsupportedK { k: usize, reason: String },

    /// A matching handed to a reduction map does not perfectly match the
    /// hypergraph it is claimed to match.
    #[error("matching is not perfect: {0}")]
    NotPerfect(String),

    /// A lifted instance violates the shape guaranteed by the lift
    /// construction (for example an edge meeting the original vertices in
    /// more than three vertices).
    #[error("malformed lifted instance: {0}")]
    MalformedLift(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
