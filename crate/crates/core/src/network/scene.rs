use chrono::{DateTime, TimeDelta, Utc};
use serde::Serialize;

use super::{
    frames::recency_saturation, layout::rfc3339, layout_ring, link_idea_nodes, place_idea_nodes, IdeaEdge,
    IdeaNode, LinkPolicy, NetworkError,
};
use crate::dimred::ProjectionSet;
use crate::ingest::Session;
use crate::scalar::{Point3, Real};

pub const SCENE_SCHEMA_VERSION: u32 = 1;
/// JSON Schema for `scene.json`.
pub const SCENE_SCHEMA: &str = include_str!("../../docs/scene.schema.json");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneConfig {
    pub policy: LinkPolicy,
    pub tau: TimeDelta,
    pub s_min: f64,
}

impl Default for SceneConfig {
    fn default() -> Self {
        Self {
            policy: LinkPolicy::MostRecent,
            tau: TimeDelta::days(1),
            s_min: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneMetadata {
    pub schema_version: u32,
    pub link_policy: LinkPolicy,
    pub tau_seconds: f64,
    pub s_min: f64,
    pub height: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkScene<T> {
    pub n: usize,
    pub ring: Vec<Point3<T>>,
    pub social_edges: Vec<(usize, usize)>,
    pub ideas: Vec<IdeaNode<T>>,
    pub idea_edges: Vec<IdeaEdge>,
    /// `None` for a scene without ideas.
    #[serde(serialize_with = "opt_rfc3339")]
    pub cursor: Option<DateTime<Utc>>,
    pub metadata: SceneMetadata,
}

fn opt_rfc3339<S: serde::Serializer>(t: &Option<DateTime<Utc>>, s: S) -> Result<S::Ok, S::Error> {
    match t {
        Some(t) => rfc3339(t, s),
        None => s.serialize_none(),
    }
}

/// Full scene with the cursor at the last idea; saturations are taken at
/// the cursor.
pub fn build_scene<T: Real>(
    session: &Session,
    projections: &ProjectionSet<T>,
    config: &SceneConfig,
) -> Result<NetworkScene<T>, NetworkError> {
    if config.tau <= TimeDelta::zero() {
        return Err(NetworkError::InvalidArgument("τ must be positive".into()));
    }
    if !(0.0..1.0).contains(&config.s_min) {
        return Err(NetworkError::InvalidArgument("s_min must lie in [0, 1)".into()));
    }
    let ring = layout_ring(&session.network)?;
    let mut ideas = place_idea_nodes(session, projections)?;
    let cursor = ideas.iter().map(|n| n.birth).max();
    if let Some(c) = cursor {
        for node in &mut ideas {
            node.saturation = recency_saturation(c - node.birth, config.tau, T::lit(config.s_min));
        }
    }
    let idea_edges = link_idea_nodes(&ideas, &session.network, config.policy);
    Ok(NetworkScene {
        n: session.network.n(),
        ring,
        social_edges: session.network.edges().to_vec(),
        ideas,
        idea_edges,
        cursor,
        metadata: SceneMetadata {
            schema_version: SCENE_SCHEMA_VERSION,
            link_policy: config.policy,
            tau_seconds: config.tau.num_milliseconds() as f64 / 1000.0,
            s_min: config.s_min,
            height: "normalized_pc1",
        },
    })
}

/// Pretty-printed JSON with fields in declaration order.
pub fn export_scene_json<T: Real + Serialize>(scene: &NetworkScene<T>) -> String {
    serde_json::to_string_pretty(scene).expect("scene serializes")
}
