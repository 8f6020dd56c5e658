use thiserror::Error;

use crate::lattice::{Edge, Grid, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside grid {grid}")]
    OutOfBounds { vertex: Vertex, grid: Grid },

    #[error("edge {0} violates the subgroup condition")]
    NotSubgroup(Edge),

    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: Grid, right: Grid },

    #[error("not a transfer system: {0}")]
    NotTransferSystem(String),

    #[error("operation requires a chain grid (r = 0 or s = 0), got {0}")]
    NotChain(Grid),

    #[error("no component with id {id} (system has {count})")]
    BadComponent { id: usize, count: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Json(String),

    #[error("{grid} has {vertices} vertices, above the enumeration limit of {limit}")]
    GuardExceeded {
        grid: Grid,
        vertices: usize,
        limit: usize,
    },
}

impl Error {
    /// Resource errors are distinguished from input errors for exit codes and
    /// FFI status values.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
