//! Deterministic SVG output for the three views, plus animation frames.

mod canvas;
mod cloud;
mod contour;
mod frames;
mod network;
mod svg;
mod terrain;

pub use canvas::{CanvasSpec, Palette};
pub use cloud::{render_cloud_svg, CloudOptions, TrajectoryOverlay};
pub use contour::{iso_lines, superlevel_loops, Contour};
pub use frames::{render_frames, FRAME_INDEX_FILE};
pub use network::{project_point, render_network_svg, Camera, NetworkHighlights};
pub use svg::SvgDoc;
pub use terrain::{peak_label, render_terrain_svg, TerrainOptions, DEFAULT_LEVELS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("trajectory overlay needs a participant")]
    TrajectoryWithoutParticipant,
    #[error("camera elevation {0} must lie strictly inside (−π/2, π/2)")]
    DegenerateCamera(f64),
    #[error("invalid canvas: {0}")]
    InvalidCanvas(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
