use crate::polygon::{Edge, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared across the crate. Functions that can only fail in one way
/// still use this enum so callers can plumb a single error type around.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polygon dimension must be at least 1, got {0}")]
    InvalidDimension(u32),

    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: u16, got: u16 },

    #[error("dimension {got} exceeds the supported maximum {max} for this operation")]
    DimensionTooLarge { got: u16, max: u16 },

    #[error("operands have mismatched dimensions {0} and {1}")]
    DimMismatch(u16, u16),

    #[error("vertex {vertex} out of range for a polygon on {n} vertices")]
    VertexOutOfRange { vertex: u16, n: u16 },

    #[error("value {got} outside the valid range {lo}..={hi} for {what}")]
    OutOfRange {
        what: &'static str,
        got: i64,
        lo: i64,
        hi: i64,
    },

    #[error("edge {edge} is not an interior edge of the triangulation")]
    NotInteriorEdge { edge: Edge },

    #[error("edge {edge} is not a boundary edge of the polygon")]
    NotBoundaryEdge { edge: Edge },

    #[error("vertex {0} appears in no valid move here")]
    BadVertex(Vertex),

    #[error("triangulation is invalid: {0}")]
    InvalidTriangulation(String),

    #[error("constraint violated: {inequality} ({detail})")]
    ConstraintViolation {
        inequality: &'static str,
        detail: String,
    },

    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),

    #[error(
        "resource limit hit after exploring {explored} states{}",
        lower_bound.map(|b| format!(" (best distance lower bound so far: {b})")).unwrap_or_default()
    )]
    ResourceLimit {
        explored: u64,
        /// Largest exact BFS depth reached before the cap. Any value here is
        /// a true lower bound for the quantity being searched.
        lower_bound: Option<u32>,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
