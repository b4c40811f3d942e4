use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("unsupported body for this operation: {0}")]
    UnsupportedBody(String),

    #[error("parallelogram search failed: best ratio {ratio} exceeds {limit}")]
    ParallelogramSearch { ratio: f64, limit: f64 },

    #[error("degenerate parallelogram fit")]
    DegenerateFit,

    #[error("family is not a translate family (scales differ)")]
    NotTranslates,

    #[error("no line offset with clearance {clearance} after {draws} draws")]
    ClearanceUnachievable { clearance: f64, draws: usize },

    #[error("precedence relation is not transitive on members {0}, {1}, {2}")]
    TransitivityViolation(usize, usize, usize),

    #[error("member index {index} out of range for {count} members")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("covering certificate rejected: {uncovered} uncovered samples (worst margin {worst_margin:e})")]
    CertificateRejected { uncovered: usize, worst_margin: f64 },

    #[error("certificate does not match the family body: {0}")]
    CertificateMismatch(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("member cap exceeded: {requested} > {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("random placement budget exhausted at member {0}")]
    RejectionBudget(usize),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
