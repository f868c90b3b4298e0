use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("division by zero")]
    DivisionByZero,
    #[error("empty point set")]
    Empty,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("point {0} is not in the polytope")]
    NotInPolytope(String),
    #[error("cone {0} is not maximal in the fan")]
    NotMaximal(String),
    #[error("cones do not meet in a common face: {0}")]
    NotAFan(String),
    #[error("cone {0} is not in the fan")]
    NotInFan(String),
    #[error("function is not defined on all of the ambient space")]
    NotGloballyDefined,
    #[error("function is not convex: {0}")]
    NotConvex(String),
    #[error("seed is not compatible with a crepant subdivision: {0}")]
    SeedNotCrepant(String),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("point is not in the torus: {0}")]
    NotTorusPoint(String),
    #[error("no valid sample after {0} draws")]
    SamplingExhausted(usize),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("scenario pipeline failed: {0}")]
    Pipeline(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
