use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size mismatch: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),

    #[error("non-finite sample at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("period {period} outside supported range 1..={max}")]
    PeriodOutOfRange { period: u32, max: u32 },

    #[error("no analytic subaction for {potential} under {map}")]
    UnsupportedKind { potential: String, map: String },

    #[error(
        "distance {distance:e} to the reference is below the degeneracy threshold {threshold:e}"
    )]
    DegenerateDistance { distance: f64, threshold: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no zero of H(f) - f found (min |H(f) - f| = {min_abs:e})")]
    NotFound { min_abs: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
