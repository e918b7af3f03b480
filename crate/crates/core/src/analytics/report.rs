use serde::Serialize;

use super::{
    avg_pairwise_distance, daily_slices, detect_novel, kmeans, select_k_elbow, trajectory,
    AnalyticsError, ClusterAssignment, DailySlice, DiversityReport, Trajectory,
    DEFAULT_NOVELTY_QUANTILE,
};
use crate::dimred::ProjectionSet;
use crate::ingest::Session;
use crate::scalar::{Point2, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudSettings {
    /// Upper end of the elbow search; capped at the number of ideas.
    pub k_max: usize,
    /// Fixed cluster count that bypasses the elbow search.
    pub k_override: Option<usize>,
    pub novelty_quantile: f64,
    pub seed: u64,
}

impl Default for CloudSettings {
    fn default() -> Self {
        Self {
            k_max: 8,
            k_override: None,
            novelty_quantile: DEFAULT_NOVELTY_QUANTILE,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummary<T> {
    pub k: usize,
    pub idea_ids: Vec<String>,
    pub labels: Vec<usize>,
    pub centroids: Vec<Point2<T>>,
    pub inertia: T,
    /// Inertia for k = 1, 2, …; empty when k was fixed by the caller.
    pub inertia_curve: Vec<T>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DayNovelty<T> {
    pub day: usize,
    pub idea_ids: Vec<String>,
    pub distances: Vec<T>,
    pub novel: Vec<bool>,
    pub threshold: T,
}

/// Everything the Idea Cloud view reports for one session.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CloudAnalytics<T> {
    pub clusters: ClusterSummary<T>,
    pub diversity: DiversityReport<T>,
    pub trajectories: Vec<Trajectory<T>>,
    pub slices: Vec<DailySlice<T>>,
    pub dispersion_series: Vec<T>,
    /// Days after the first, each judged against all earlier days.
    pub novelty: Vec<DayNovelty<T>>,
}

fn summarize<T: Real>(
    ids: Vec<String>,
    a: ClusterAssignment<T>,
    curve: Vec<T>,
    warning: Option<String>,
) -> ClusterSummary<T> {
    ClusterSummary {
        k: a.k,
        idea_ids: ids,
        labels: a.labels,
        centroids: a.centroids,
        inertia: a.inertia,
        inertia_curve: curve,
        warning,
    }
}

pub fn analyze_cloud<T: Real>(
    session: &Session,
    projections: &ProjectionSet<T>,
    settings: &CloudSettings,
) -> Result<CloudAnalytics<T>, AnalyticsError> {
    let mut ids = Vec::with_capacity(session.ideas.len());
    let mut points = Vec::with_capacity(session.ideas.len());
    for idea in &session.ideas {
        let p = projections
            .get(&idea.id)
            .ok_or_else(|| AnalyticsError::MissingProjection(idea.id.clone()))?;
        ids.push(idea.id.clone());
        points.push(p.position());
    }

    let clusters = match (settings.k_override, points.len()) {
        (_, 0) => ClusterSummary {
            k: 0,
            idea_ids: ids,
            labels: Vec::new(),
            centroids: Vec::new(),
            inertia: T::zero(),
            inertia_curve: Vec::new(),
            warning: Some("session has no ideas".into()),
        },
        (Some(k), _) => summarize(ids, kmeans(&points, k, settings.seed, 300)?, Vec::new(), None),
        (None, 1) => summarize(
            ids,
            kmeans(&points, 1, settings.seed, 1)?,
            Vec::new(),
            Some("a single idea forms one cluster".into()),
        ),
        (None, n) => {
            let e = select_k_elbow(&points, settings.k_max.clamp(2, n), settings.seed)?;
            let best = e.best().clone();
            summarize(ids, best, e.inertias, e.warning)
        }
    };

    let trajectories = (0..session.network.n())
        .map(|p| trajectory(session, p, projections))
        .collect::<Result<Vec<_>, _>>()?;
    let slices = daily_slices(session, projections)?;
    let dispersion_series = slices.iter().map(|s| s.dispersion).collect();

    let quantile = T::lit(settings.novelty_quantile);
    let mut novelty = Vec::new();
    let mut prior: Vec<Point2<T>> = Vec::new();
    for s in &slices {
        if !prior.is_empty() && !s.points.is_empty() {
            let r = detect_novel(&s.points, &prior, quantile)?;
            novelty.push(DayNovelty {
                day: s.day,
                idea_ids: s.idea_ids.clone(),
                distances: r.distances,
                novel: r.flags,
                threshold: r.threshold,
            });
        }
        prior.extend_from_slice(&s.points);
    }

    Ok(CloudAnalytics {
        clusters,
        diversity: avg_pairwise_distance(&points),
        trajectories,
        slices,
        dispersion_series,
        novelty,
    })
}
