use serde::Serialize;

use super::AnalyticsError;
use crate::scalar::{dist, quantile_sorted, Point2, Real};

pub const DEFAULT_NOVELTY_QUANTILE: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoveltyResult<T> {
    pub flags: Vec<bool>,
    /// Nearest-neighbour distance of each new point to the prior set.
    pub distances: Vec<T>,
    pub threshold: T,
}

fn nearest_distance<T: Real>(p: &Point2<T>, others: impl Iterator<Item = Point2<T>>) -> T {
    others.map(|q| dist(p, &q)).fold(T::infinity(), T::min)
}

/// Flags new points whose nearest prior point is farther than the given
/// quantile of the prior set's own leave-one-out nearest-neighbour distances.
///
/// A single prior point has no such distances; the threshold is then 0, so
/// any new point not coincident with it is novel.
pub fn detect_novel<T: Real>(
    new_points: &[Point2<T>],
    prior_points: &[Point2<T>],
    quantile: T,
) -> Result<NoveltyResult<T>, AnalyticsError> {
    if prior_points.is_empty() {
        return Err(AnalyticsError::EmptyReference);
    }
    if !(quantile > T::zero() && quantile <= T::one()) {
        return Err(AnalyticsError::InvalidArgument(format!(
            "novelty quantile {quantile} must lie in (0, 1]"
        )));
    }
    let mut loo: Vec<T> = prior_points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let d = nearest_distance(
                p,
                prior_points
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, q)| *q),
            );
            d.is_finite().then_some(d)
        })
        .collect();
    loo.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    let threshold = quantile_sorted(&loo, quantile).unwrap_or_else(T::zero);
    let distances: Vec<T> = new_points
        .iter()
        .map(|p| nearest_distance(p, prior_points.iter().copied()))
        .collect();
    Ok(NoveltyResult {
        flags: distances.iter().map(|&d| d > threshold).collect(),
        distances,
        threshold,
    })
}
