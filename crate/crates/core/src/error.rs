use thiserror::Error;

/// Everything that can go wrong in the numerical layer and the analysis built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{op} did not converge within {sweeps} sweeps")]
    NoConvergence { op: &'static str, sweeps: usize },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e} below {threshold:e}")]
    NotPositive { min_eigenvalue: f64, threshold: f64 },

    #[error("dimension {n} exceeds the limit {limit} for {op}")]
    DimensionTooLarge {
        op: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pair specification violated: {0}")]
    PairSpecViolation(String),

    #[error("triangle equality does not hold: defect {defect:e} exceeds {threshold:e}")]
    EqualityPrecondition { defect: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
