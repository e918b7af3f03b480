use std::collections::BTreeMap;

use ideascope_core::geography::{
    elevation_from_length, elevation_from_scores, find_peaks, participant_overlay, rank_correlation, stage_count,
    terrain_from_elevations, terrain_json, write_esri_ascii, write_peaks_csv, ElevationSet, GeographyError,
    Interpolation, LengthMode, Metric,
};
use ideascope_core::ingest::{parse_scores, IdeaKind, IdeaRecord};
use ideascope_core::render::{render_terrain_svg, TerrainOptions};
use serde_json::json;

use super::{
    csv_bytes, load_projections, load_session, read_text, to_value, Input, Pipeline, StageStatus, GEOGRAPHY_FILE,
    PROJECTIONS_FILE,
};
use crate::config::{InterpolationChoice, LengthChoice, MetricChoice, PipelineConfig};
use crate::error::CliError;

fn custom_elevations(cfg: &PipelineConfig, ideas: &[IdeaRecord]) -> Result<ElevationSet<f64>, CliError> {
    let path = cfg.geography.custom_values.as_deref().expect("validated config");
    let recs = parse_scores(&read_text(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let mut sums: BTreeMap<&str, (f64, usize)> = BTreeMap::new();
    for r in &recs {
        if !ideas.iter().any(|i| i.id == r.id) {
            return Err(CliError::Validation(format!("{}: unknown idea id `{}`", path.display(), r.id)));
        }
        let e = sums.entry(r.id.as_str()).or_default();
        e.0 += r.score;
        e.1 += 1;
    }
    let mut set = ElevationSet {
        ids: Vec::new(),
        values: Vec::new(),
        excluded: Vec::new(),
    };
    for idea in ideas {
        match sums.get(idea.id.as_str()) {
            Some(&(s, n)) => {
                set.ids.push(idea.id.clone());
                set.values.push(s / n as f64);
            }
            None => set.excluded.push(idea.id.clone()),
        }
    }
    if set.ids.is_empty() {
        return Err(CliError::Validation(format!("{}: no custom values", path.display())));
    }
    Ok(set)
}

/// Participant whose scored final ideas have the highest mean score.
fn best_scoring(ideas: &[IdeaRecord], n: usize) -> Option<usize> {
    let mut sums = vec![(0.0, 0usize); n];
    for idea in ideas.iter().filter(|i| i.kind == IdeaKind::Final) {
        if let Some(s) = idea.mean_score() {
            sums[idea.participant].0 += s;
            sums[idea.participant].1 += 1;
        }
    }
    let mut best: Option<(usize, f64)> = None;
    for (p, &(s, c)) in sums.iter().enumerate() {
        if c > 0 {
            let m = s / c as f64;
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((p, m));
            }
        }
    }
    best.map(|(p, _)| p)
}

pub(super) fn run(p: &mut Pipeline) -> Result<StageStatus, CliError> {
    let projections = p.artifact(PROJECTIONS_FILE);
    let mut inputs = p.session_inputs(true)?;
    if let Some(c) = &p.cfg.geography.custom_values {
        inputs.push(Input::user("custom_values", c));
    }
    inputs.push(Input::artifact("projections", projections.clone(), "reduce"));
    let config = json!({
        "geography": to_value(&p.cfg.geography),
        "levels": p.cfg.render.levels,
        "participant": p.cfg.render.participant,
        "canvas": [p.cfg.render.width, p.cfg.render.height, p.cfg.render.margin],
    });
    p.cached("geography", config, &inputs, |ctx| {
        let session = load_session(ctx.cfg)?;
        let proj = load_projections(&projections)?;
        let g = &ctx.cfg.geography;
        let (metric, set) = match g.metric {
            MetricChoice::Utility => (Metric::Utility, elevation_from_scores::<f64>(&session.ideas)?),
            MetricChoice::IdeaLength => {
                let mode = match g.length_mode {
                    LengthChoice::Stages => LengthMode::Stages,
                    LengthChoice::Tokens => LengthMode::Tokens,
                };
                (Metric::IdeaLength, elevation_from_length::<f64>(&session.ideas, mode))
            }
            MetricChoice::Custom => (Metric::Custom, custom_elevations(ctx.cfg, &session.ideas)?),
        };
        if !set.excluded.is_empty() {
            log::info!("geography: {} ideas without an elevation value left out", set.excluded.len());
        }
        let interpolation = match g.interpolation {
            InterpolationChoice::NadarayaWatson => Interpolation::NadarayaWatson,
            InterpolationChoice::InverseDistance => Interpolation::InverseDistance { power: g.idw_power },
        };
        let grid = terrain_from_elevations(&set, &proj, g.resolution, g.bandwidth, metric, interpolation)?;
        let peaks = find_peaks(&grid, g.min_prominence);

        let mut overlays = Vec::new();
        for q in 0..session.network.n() {
            match participant_overlay(&grid, q, &session.ideas, &proj) {
                Ok(o) => overlays.push(o),
                Err(GeographyError::NoFinalIdeas(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        let focus = match ctx.cfg.render.participant {
            Some(q) => Some(q),
            None => best_scoring(&session.ideas, session.network.n()),
        };
        let focus_overlay = focus.and_then(|q| overlays.iter().find(|o| o.participant == q));

        let (scores, lengths): (Vec<f64>, Vec<f64>) = session
            .ideas
            .iter()
            .filter_map(|i| i.mean_score().map(|s| (s, stage_count(&i.text) as f64)))
            .unzip();
        let summary = json!({
            "metric": metric,
            "ideas": set.ids.len(),
            "excluded": set.excluded,
            "peaks": peaks.len(),
            "score_length_rank_correlation": rank_correlation(&scores, &lengths),
            "overlay_participant": focus_overlay.map(|o| o.participant),
            "overlays": overlays,
        });

        let canvas = ctx.canvas();
        let levels = ctx.cfg.render.levels;
        let terrain_svg = render_terrain_svg(
            &grid,
            &canvas,
            &TerrainOptions {
                levels,
                peaks: Some(&peaks),
                title: Some("Idea Geography"),
                ..Default::default()
            },
        )?;
        let overlay_title = match focus_overlay {
            Some(o) => format!("Final ideas of participant {}", o.participant),
            None => "Final ideas".to_string(),
        };
        let overlay_svg = render_terrain_svg(
            &grid,
            &canvas,
            &TerrainOptions {
                levels,
                peaks: Some(&peaks),
                markers: focus_overlay.map(|o| o.markers.as_slice()),
                title: Some(&overlay_title),
                ..Default::default()
            },
        )?;

        let mut asc = Vec::new();
        write_esri_ascii(&mut asc, &grid).map_err(|e| CliError::io("terrain.asc", e))?;
        Ok(vec![
            ctx.write_json("terrain.json", &terrain_json(&grid))?,
            ctx.write("terrain.asc", asc)?,
            ctx.write("peaks.csv", csv_bytes(|w| write_peaks_csv(w, &peaks))?)?,
            ctx.write("terrain.svg", terrain_svg)?,
            ctx.write("overlay.svg", overlay_svg)?,
            ctx.write_json(GEOGRAPHY_FILE, &summary)?,
        ])
    })
}
