use serde::Serialize;

use super::AnalyticsError;
use crate::dimred::ProjectionSet;
use crate::ingest::Session;
use crate::scalar::{dist, Point2, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<T> {
    pub participant: usize,
    pub idea_ids: Vec<String>,
    pub waypoints: Vec<Point2<T>>,
    pub total_distance: T,
}

pub fn path_length<T: Real>(waypoints: &[Point2<T>]) -> T {
    waypoints.windows(2).map(|w| dist(&w[0], &w[1])).sum()
}

/// The participant's ideas in `(timestamp, id)` order and the length of the
/// polyline through their normalized positions.
pub fn trajectory<T: Real>(
    session: &Session,
    participant: usize,
    projections: &ProjectionSet<T>,
) -> Result<Trajectory<T>, AnalyticsError> {
    let n = session.network.n();
    if participant >= n {
        return Err(AnalyticsError::InvalidParticipant { participant, n });
    }
    let mut ideas: Vec<_> = session.ideas_by(participant).collect();
    ideas.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.id.cmp(&b.id)));
    let mut idea_ids = Vec::with_capacity(ideas.len());
    let mut waypoints = Vec::with_capacity(ideas.len());
    for idea in ideas {
        let p = projections
            .get(&idea.id)
            .ok_or_else(|| AnalyticsError::MissingProjection(idea.id.clone()))?;
        idea_ids.push(idea.id.clone());
        waypoints.push(p.position());
    }
    Ok(Trajectory {
        participant,
        total_distance: path_length(&waypoints),
        idea_ids,
        waypoints,
    })
}
