use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({i}, {j}) is a self-loop")]
    SelfLoop { i: usize, j: usize },

    #[error("edge ({i}, {j}) has nonpositive weight {weight}")]
    NonPositiveWeight { i: usize, j: usize, weight: f64 },

    #[error("edge ({i}, {j}) references a vertex outside [0, {n})")]
    VertexOutOfRange { i: usize, j: usize, n: usize },

    #[error("vertex {0} is isolated (zero degree)")]
    IsolatedVertex(usize),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vector length {got} does not match dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex set is empty or covers every vertex; not a proper cut")]
    ImproperCut,

    #[error("vertex set has zero volume")]
    ZeroVolume,

    #[error("vector is zero")]
    ZeroVector,

    #[error("vector is constant; no proper sweep cut exists")]
    ConstantVector,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid ring-of-cliques parameters b={b}, q={q}: {reason}")]
    InvalidRocParams { b: usize, q: usize, reason: &'static str },

    #[error("dense eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("graph with {n} vertices exceeds the dense oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("starting vector lies in the span of the Perron vector; reseed")]
    DegenerateStart,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
