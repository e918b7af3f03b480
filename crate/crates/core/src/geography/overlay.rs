use serde::Serialize;

use super::{GeographyError, TerrainGrid};
use crate::dimred::ProjectionSet;
use crate::ingest::{IdeaKind, IdeaRecord};
use crate::scalar::{Point2, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlayMarker<T> {
    pub id: String,
    pub position: Point2<T>,
    /// Terrain height under the marker.
    pub terrain_elevation: T,
    /// The idea's own mean score.
    pub score: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParticipantOverlay<T> {
    pub participant: usize,
    pub markers: Vec<OverlayMarker<T>>,
    pub score_mean: T,
    pub score_min: T,
}

/// Marks a participant's scored final ideas on the terrain.
pub fn participant_overlay<T: Real>(
    grid: &TerrainGrid<T>,
    participant: usize,
    ideas: &[IdeaRecord],
    projections: &ProjectionSet<T>,
) -> Result<ParticipantOverlay<T>, GeographyError> {
    let mut markers = Vec::new();
    for idea in ideas
        .iter()
        .filter(|i| i.participant == participant && i.kind == IdeaKind::Final)
    {
        let Some(score) = idea.mean_score() else {
            continue;
        };
        let p = projections
            .get(&idea.id)
            .ok_or_else(|| GeographyError::MissingProjection(idea.id.clone()))?;
        markers.push(OverlayMarker {
            id: idea.id.clone(),
            position: p.position(),
            terrain_elevation: grid.sample(p.position()),
            score: T::lit(score),
        });
    }
    if markers.is_empty() {
        return Err(GeographyError::NoFinalIdeas(participant));
    }
    let score_mean = markers.iter().map(|m| m.score).sum::<T>() / T::from_usize_lossy(markers.len());
    let score_min = markers.iter().map(|m| m.score).fold(T::infinity(), T::min);
    Ok(ParticipantOverlay {
        participant,
        markers,
        score_mean,
        score_min,
    })
}
