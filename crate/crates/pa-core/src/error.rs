use thiserror::Error;

/// Errors produced by the geometric and combinatorial kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero direction")]
    ZeroDirection,
    #[error("lineality direction")]
    LinealityDirection,
    #[error("ambient dimension mismatch")]
    DimensionMismatch,
    #[error("empty input")]
    EmptyInput,
    #[error("empty cut")]
    EmptyCut,
    #[error("infeasible system")]
    Infeasible,
    #[error("unbounded system")]
    Unbounded,
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("not a vertex")]
    NotAVertex,
    #[error("polytope is not simple")]
    NotSimple,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("time budget exceeded")]
    Timeout,
}

pub type Result<T> = std::result::Result<T, Error>;
