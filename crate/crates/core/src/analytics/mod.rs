//! Idea Cloud analytics on normalized coordinates: clustering, diversity,
//! novelty, participant trajectories and daily slices.

mod diversity;
mod export;
mod kmeans;
mod novelty;
mod report;
mod slices;
mod trajectory;

pub use diversity::{avg_pairwise_distance, DiversityReport};
pub use export::{write_clusters_csv, write_novelty_csv, write_slices_csv, write_trajectories_csv};
pub use kmeans::{kmeans, select_k_elbow, ClusterAssignment, ElbowResult, ELBOW_RESTARTS};
pub use novelty::{detect_novel, NoveltyResult, DEFAULT_NOVELTY_QUANTILE};
pub use report::{analyze_cloud, CloudAnalytics, CloudSettings, ClusterSummary, DayNovelty};
pub use slices::{daily_slices, dispersion, DailySlice};
pub use trajectory::{path_length, trajectory, Trajectory};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("k = {k} is invalid for {points} points")]
    InvalidK { k: usize, points: usize },
    #[error("participant {participant} is outside the network (n = {n})")]
    InvalidParticipant { participant: usize, n: usize },
    #[error("idea `{0}` has no projection")]
    MissingProjection(String),
    #[error("novelty needs at least one prior point")]
    EmptyReference,
    #[error("{0}")]
    InvalidArgument(String),
}
