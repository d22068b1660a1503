use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants split into two families: invalid input (bad surface
/// parameters, unsupported constructions) and numerical failure (vertex
/// collisions, non-convergent refinement). The CLI maps the first family
/// to exit code 1 and the second to exit code 2.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("edge index {edge} out of range for a {sides}-gon")]
    EdgeOutOfRange { edge: usize, sides: usize },

    #[error("edge parameter {0} outside the open interval (0, 1)")]
    EdgeParameter(f64),

    #[error("degenerate start angle {0} (must lie strictly between 0 and pi)")]
    DegenerateAngle(f64),

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("geodesic passes within tolerance of vertex {vertex} at bounce {bounce}")]
    VertexCollision { vertex: usize, bounce: usize },

    #[error("path is not closed")]
    NotClosed,

    #[error("distance query grazes a vertex")]
    VertexGrazing,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that stem from numerical trouble rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::VertexCollision { .. }
                | Error::VertexGrazing
                | Error::Numerical(_)
                | Error::NotClosed
                | Error::BudgetExhausted(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
