//! Idea Network: participants on a ring with their ideas stacked above them
//! at PC1 height, linked along the social topology and fading with age.

mod analysis;
mod frames;
mod layout;
mod scene;

pub use analysis::{
    contribution_counts, detect_innovator, gini, participant_pc1_range, robust_z_scores,
    ContributionReport, InnovatorReport, NeighborRange, Pc1Range, DEFAULT_INNOVATOR_Z,
};
pub use frames::{animate, frame_cursors, recency_saturation, Animation, FrameSpec};
pub use layout::{layout_ring, link_idea_nodes, place_idea_nodes, IdeaEdge, IdeaNode, LinkPolicy};
pub use scene::{
    build_scene, export_scene_json, NetworkScene, SceneConfig, SceneMetadata, SCENE_SCHEMA,
    SCENE_SCHEMA_VERSION,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("network has no nodes")]
    EmptyNetwork,
    #[error("idea `{0}` has no projection")]
    MissingProjection(String),
    #[error("need at least {needed} ideas, got {got}")]
    TooFewIdeas { needed: usize, got: usize },
    #[error("participant {0} posted no ideas")]
    NoIdeas(usize),
    #[error("participant {participant} is outside the network (n = {n})")]
    InvalidParticipant { participant: usize, n: usize },
    #[error("{0}")]
    InvalidArgument(String),
}
