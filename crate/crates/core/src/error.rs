use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {n} outside the supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },

    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("self-loop at vertex {0} rejected")]
    Loop(usize),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    Edgeless,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("power iteration did not converge after {iterations} steps (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("order {n} is beyond the exact search regime (max {max}); enable heuristic mode to continue")]
    BeyondExactRegime { n: usize, max: usize },

    #[error("enumeration supports orders 1..={max}, got {n}")]
    EnumerationRange { n: usize, max: usize },

    #[error("checkpoint does not match this campaign: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
