use thiserror::Error;

/// Errors raised while building or evaluating solutions and their derived data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("elements belong to different sectors (AdS vs sphere)")]
    MixedSectors,

    #[error("group constraint violated: {what} (residual {residual:.3e})")]
    GroupConstraint { what: &'static str, residual: f64 },

    #[error("embedding constraint violated: norm {norm} differs from {expected} by more than tolerance")]
    EmbeddingConstraint { norm: f64, expected: f64 },

    #[error("invalid unit vector: {0}")]
    UnitVector(String),

    #[error("winding integers {0} and {1} do not have the same parity")]
    Parity(i64, i64),

    #[error("frequency relation 4*{lambda}*{rho} = {m}*{n} violated by {defect:.3e}")]
    FrequencyRelation {
        lambda: f64,
        rho: f64,
        m: i64,
        n: i64,
        defect: f64,
    },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("inadmissible invariants: {0}")]
    Region(crate::bridge::RegionViolation),

    #[error("winding number undefined: {0}")]
    UndefinedWinding(&'static str),

    #[error("chart singular at this point: {0}")]
    ChartSingular(&'static str),

    #[error("two-form is singular (smallest singular value {0:.3e})")]
    SingularForm(f64),

    #[error("empty grid: {0}")]
    EmptyGrid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
