use thiserror::Error;

/// Workspace-wide error type. Geometry preconditions are violated loudly, not
/// patched over: every variant corresponds to a contract stated on an
/// operation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not full-dimensional (affine dim {affine} < ambient {ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },
    #[error("origin is not strictly interior")]
    OriginNotInterior,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("cone is not pointed or not full-dimensional")]
    ConeNotPointed,
    #[error("cone is not contained in its dual cone")]
    ConeNotSelfDualOrdered,
    #[error("body lies in a proper face of the cone (improper W-representation)")]
    ImproperBody,
    #[error("facet list does not match the hull of the vertex list")]
    FacetMismatch,
    #[error("point set is not a valid body: {0}")]
    InvalidBody(String),
    #[error("poset relation is not a partial order: {0}")]
    InvalidPoset(String),
    #[error("one-line word is not a permutation of 1..=n: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
