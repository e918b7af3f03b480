//! Embedding, projection and analytics for collective idea-generation logs.
//!
//! The pipeline turns an idea log into three views:
//!
//! * **Idea Cloud** – ideas embedded with Paragraph Vectors, projected to the
//!   first two principal components, clustered, and tracked per participant
//!   and per day ([`dimred`], [`analytics`]).
//! * **Idea Geography** – a kernel-regression terrain over the cloud whose
//!   elevation is mean evaluation score or idea length ([`geography`]).
//! * **Idea Network** – participants on a ring with their ideas stacked above
//!   them at PC1 height, fading with age ([`network`]).
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`, which is what the CLI uses.

pub mod analytics;
pub mod dimred;
pub mod embed;
pub mod geography;
pub mod ingest;
pub mod network;
pub mod render;
pub mod scalar;

pub use scalar::{Point2, Point3, Real};

pub type EmbeddingModel = embed::EmbeddingModel<f64>;
pub type PcaModel = dimred::PcaModel<f64>;
pub type ProjectionSet = dimred::ProjectionSet<f64>;
pub type ClusterAssignment = analytics::ClusterAssignment<f64>;
pub type CloudAnalytics = analytics::CloudAnalytics<f64>;
pub type TerrainGrid = geography::TerrainGrid<f64>;
pub type Peak = geography::Peak<f64>;
pub type NetworkScene = network::NetworkScene<f64>;
pub type FrameSpec = network::FrameSpec<f64>;
