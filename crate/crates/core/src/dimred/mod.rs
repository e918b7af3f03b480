//! Dimensionality reduction to the 2-D idea plane: PCA (primary) and t-SNE.

mod eigen;
mod io;
mod normalize;
mod pca;
mod tsne;

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use io::{read_projections_csv, write_projections_csv};
pub use normalize::{normalize_unit_square, ProjectedIdea, ProjectionSet};
pub use pca::{explained_variance_report, fit_pca, project, PcaModel, VarianceReport};
pub use tsne::{fit_tsne, input_affinities, kl_divergence, kl_gradient, TsneConfig, TsneResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DimredError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("row {row} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        row: usize,
    },
    #[error("input dimension {0} is too small for a 2-D projection")]
    DimensionTooSmall(usize),
    #[error("row {row} contains a non-finite value")]
    NonFinite { row: usize },
    #[error("all points are identical (zero total variance)")]
    ZeroVariance,
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("perplexity {perplexity} must lie in [1, {points})")]
    Perplexity { perplexity: f64, points: usize },
    #[error("KL divergence became non-finite at iteration {iteration}")]
    NonFiniteKl { iteration: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
