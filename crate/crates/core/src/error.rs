use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("deformation map is not invertible at t = {t}: {detail}")]
    NonInvertible { t: f64, detail: String },

    #[error("interface has a boundary; {0} needs a closed interface")]
    UnsupportedBoundary(&'static str),

    #[error("cutoff width {width} exceeds the tubular neighbourhood (focal distance {focal})")]
    TubeTooNarrow { width: f64, focal: f64 },

    #[error(
        "epsilon {eps} too large: transition layer half-width {layer} exceeds the admissible tube {limit}"
    )]
    EpsilonTooLarge { eps: f64, layer: f64, limit: f64 },

    #[error("profile ODE stalled at s = {s_max} with 1 - q = {gap:e}")]
    StiffTail {
        s_max: f64,
        gap: f64,
        table: Box<crate::profiles::ProfileTable>,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("reference field is degenerate: {0}")]
    DegenerateReference(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
