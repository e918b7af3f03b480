use serde::Serialize;

use super::AnalyticsError;
use crate::dimred::ProjectionSet;
use crate::ingest::Session;
use crate::scalar::{centroid, dist, Point2, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DailySlice<T> {
    pub day: usize,
    pub idea_ids: Vec<String>,
    pub points: Vec<Point2<T>>,
    pub centroid: Option<Point2<T>>,
    pub dispersion: T,
}

/// Mean distance of the points to their centroid; 0 for an empty set.
pub fn dispersion<T: Real>(points: &[Point2<T>]) -> T {
    match centroid(points) {
        Some(c) => points.iter().map(|p| dist(p, &c)).sum::<T>() / T::from_usize_lossy(points.len()),
        None => T::zero(),
    }
}

/// One slice per session day, in day order, holding that day's ideas.
pub fn daily_slices<T: Real>(
    session: &Session,
    projections: &ProjectionSet<T>,
) -> Result<Vec<DailySlice<T>>, AnalyticsError> {
    let mut slices: Vec<DailySlice<T>> = (0..session.n_days())
        .map(|day| DailySlice {
            day,
            idea_ids: Vec::new(),
            points: Vec::new(),
            centroid: None,
            dispersion: T::zero(),
        })
        .collect();
    for (idea, day) in session.ideas.iter().zip(session.idea_days()) {
        let p = projections
            .get(&idea.id)
            .ok_or_else(|| AnalyticsError::MissingProjection(idea.id.clone()))?;
        slices[day].idea_ids.push(idea.id.clone());
        slices[day].points.push(p.position());
    }
    for s in &mut slices {
        s.centroid = centroid(&s.points);
        s.dispersion = dispersion(&s.points);
    }
    Ok(slices)
}
