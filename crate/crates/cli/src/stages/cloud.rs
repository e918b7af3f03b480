use std::collections::HashMap;

use ideascope_core::analytics::{
    analyze_cloud, write_clusters_csv, write_novelty_csv, write_slices_csv, write_trajectories_csv, CloudSettings,
};
use ideascope_core::render::{render_cloud_svg, CloudOptions, TrajectoryOverlay};
use ideascope_core::CloudAnalytics;
use serde_json::json;

use super::{csv_bytes, load_projections, load_session, to_value, Input, Pipeline, StageStatus, ANALYTICS_FILE, PROJECTIONS_FILE};
use crate::error::CliError;

/// Participant with the longest trajectory; ties go to the lower index.
pub(crate) fn longest_trajectory(a: &CloudAnalytics) -> Option<usize> {
    a.trajectories
        .iter()
        .filter(|t| !t.waypoints.is_empty())
        .fold(None, |best: Option<(usize, f64)>, t| match best {
            Some((_, d)) if d >= t.total_distance => best,
            _ => Some((t.participant, t.total_distance)),
        })
        .map(|(p, _)| p)
}

pub(super) fn run(p: &mut Pipeline) -> Result<StageStatus, CliError> {
    let projections = p.artifact(PROJECTIONS_FILE);
    let mut inputs = p.session_inputs(false)?;
    inputs.push(Input::artifact("projections", projections.clone(), "reduce"));
    let config = json!({
        "analytics": to_value(&p.cfg.analytics),
        "day_length_hours": p.cfg.input.day_length_hours,
        "render": to_value(&p.cfg.render),
    });
    p.cached("cloud", config, &inputs, |ctx| {
        let session = load_session(ctx.cfg)?;
        let proj = load_projections(&projections)?;
        let a = &ctx.cfg.analytics;
        let settings = CloudSettings {
            k_max: a.k_max,
            k_override: a.k,
            novelty_quantile: a.novelty_quantile,
            seed: ctx.seed,
        };
        let analytics = analyze_cloud(&session, &proj, &settings)?;
        if let Some(w) = &analytics.clusters.warning {
            log::warn!("clusters: {w}");
        }

        let mut written = vec![
            ctx.write_json(ANALYTICS_FILE, &analytics)?,
            ctx.write("clusters.csv", csv_bytes(|w| write_clusters_csv(w, &analytics))?)?,
            ctx.write("trajectories.csv", csv_bytes(|w| write_trajectories_csv(w, &analytics))?)?,
            ctx.write("slices.csv", csv_bytes(|w| write_slices_csv(w, &analytics))?)?,
            ctx.write("novelty.csv", csv_bytes(|w| write_novelty_csv(w, &analytics))?)?,
        ];

        let canvas = ctx.canvas();
        let mut points = Vec::with_capacity(session.ideas.len());
        for idea in &session.ideas {
            let pos = proj
                .get(&idea.id)
                .ok_or_else(|| CliError::Validation(format!("idea `{}` has no projection", idea.id)))?;
            points.push(pos.position());
        }
        let ids: Vec<String> = session.ideas.iter().map(|i| i.id.clone()).collect();
        let novel_by_id: HashMap<&str, bool> = analytics
            .novelty
            .iter()
            .flat_map(|d| d.idea_ids.iter().map(String::as_str).zip(d.novel.iter().copied()))
            .collect();
        let novelty: Vec<bool> = ids.iter().map(|id| novel_by_id.get(id.as_str()).copied().unwrap_or(false)).collect();
        let clusters = (!analytics.clusters.labels.is_empty()).then_some(analytics.clusters.labels.as_slice());

        let cloud = render_cloud_svg(
            &points,
            &canvas,
            &CloudOptions {
                clusters,
                novelty: Some(&novelty),
                diversity: Some(analytics.diversity),
                title: Some("Idea Cloud"),
                ..Default::default()
            },
        )?;
        written.push(ctx.write("cloud.svg", cloud)?);

        let days = session.idea_days();
        let by_day = render_cloud_svg(
            &points,
            &canvas,
            &CloudOptions {
                clusters,
                days: Some(&days),
                title: Some("Ideas by day"),
                ..Default::default()
            },
        )?;
        written.push(ctx.write("days.svg", by_day)?);

        let participant = match ctx.cfg.render.participant {
            Some(q) if q >= session.network.n() => {
                return Err(CliError::Validation(format!(
                    "render.participant {q} is outside the network (n = {})",
                    session.network.n()
                )))
            }
            Some(q) => Some(q),
            None => longest_trajectory(&analytics),
        };
        let waypoints = participant.map(|q| analytics.trajectories[q].waypoints.clone()).unwrap_or_default();
        let title = match participant {
            Some(q) => format!("Trajectory of participant {q}"),
            None => "Trajectory".to_string(),
        };
        let traj = render_cloud_svg(
            &points,
            &canvas,
            &CloudOptions {
                trajectory: participant.map(|q| TrajectoryOverlay {
                    participant: Some(q),
                    waypoints: &waypoints,
                }),
                title: Some(&title),
                ..Default::default()
            },
        )?;
        written.push(ctx.write("trajectory.svg", traj)?);
        Ok(written)
    })
}
