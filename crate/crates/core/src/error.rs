//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("evaluation at a pole: z = {z} hits factor (z + {offset})")]
    Pole { z: Complex64, offset: f64 },

    #[error("degenerate twist: {0}")]
    DegenerateTwist(String),

    #[error("degenerate Casimir blocks: {0}")]
    DegenerateBlocks(String),

    #[error("representation is not rectangular: {0}")]
    NotRectangular(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("Bethe root collision at level {level}: |z_{i} - z_{j}| = {dist:.3e}")]
    RootCollision {
        level: usize,
        i: usize,
        j: usize,
        dist: f64,
    },

    #[error("linear algebra backend: {0}")]
    Linalg(String),

    #[error("{0}")]
    Invalid(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
