//! Idea Geography: kernel-regression terrains over the idea plane, with
//! peak detection and per-participant overlays.

mod elevation;
mod export;
mod overlay;
mod peaks;
mod terrain;

pub use elevation::{
    elevation_from_length, elevation_from_scores, rank_correlation, stage_count, ElevationSet,
    LengthMode,
};
pub use export::{terrain_json, write_esri_ascii, write_peaks_csv, ESRI_NODATA};
pub use overlay::{participant_overlay, OverlayMarker, ParticipantOverlay};
pub use peaks::{find_peaks, Peak, DEFAULT_MIN_PROMINENCE};
pub use terrain::{
    build_terrain, build_terrain_with, terrain_from_elevations, Interpolation, Metric, TerrainGrid,
    DEFAULT_BANDWIDTH, DEFAULT_RESOLUTION, SUPPORT_EPSILON,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeographyError {
    #[error("no idea carries an evaluation score")]
    NoScoredIdeas,
    #[error("terrain needs at least one point")]
    EmptyInput,
    #[error("{points} points but {elevations} elevations")]
    LengthMismatch { points: usize, elevations: usize },
    #[error("bandwidth must be positive, got {0}")]
    InvalidBandwidth(f64),
    #[error("grid resolution must be at least 2, got {0}")]
    InvalidResolution(usize),
    #[error("input {0} is not finite")]
    NonFinite(usize),
    #[error("participant {0} has no scored final ideas")]
    NoFinalIdeas(usize),
    #[error("idea `{0}` has no projection")]
    MissingProjection(String),
}
