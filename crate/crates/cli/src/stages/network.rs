use std::fs;

use ideascope_core::network::{
    animate, build_scene, contribution_counts, detect_innovator, export_scene_json, participant_pc1_range,
    SceneConfig,
};
use ideascope_core::render::{render_frames, render_network_svg, Camera, NetworkHighlights};
use serde_json::json;

use super::{day_length, load_projections, load_session, to_value, Input, Pipeline, StageStatus, NETWORK_ANALYSIS_FILE, PROJECTIONS_FILE};
use crate::error::CliError;

pub(super) fn run(p: &mut Pipeline) -> Result<StageStatus, CliError> {
    let projections = p.artifact(PROJECTIONS_FILE);
    let mut inputs = p.session_inputs(false)?;
    inputs.push(Input::artifact("projections", projections.clone(), "reduce"));
    let config = json!({
        "network": to_value(&p.cfg.network),
        "render": to_value(&p.cfg.render),
    });
    p.cached("network", config, &inputs, |ctx| {
        let session = load_session(ctx.cfg)?;
        let proj = load_projections(&projections)?;
        let n = &ctx.cfg.network;
        let tau = day_length(n.tau_hours);
        let scene = build_scene(
            &session,
            &proj,
            &SceneConfig {
                policy: n.link_policy,
                tau,
                s_min: n.s_min,
            },
        )?;
        let innovators = if scene.ideas.len() >= 3 {
            Some(detect_innovator(&scene.ideas, n.z_threshold)?)
        } else {
            log::warn!("network: fewer than 3 ideas, innovator detection skipped");
            None
        };
        let contributions = contribution_counts(&session, n.contribution_threshold);
        let ranges = (0..session.network.n())
            .filter(|&q| contributions.counts[q] > 0)
            .map(|q| participant_pc1_range(&scene.ideas, &session.network, q))
            .collect::<Result<Vec<_>, _>>()?;
        let analysis = json!({
            "innovators": innovators,
            "contributions": contributions,
            "pc1_ranges": ranges,
        });

        let flagged = innovators.as_ref().map(|r| r.flagged_ideas.clone()).unwrap_or_default();
        let highlights = NetworkHighlights { innovators: &flagged };
        let r = &ctx.cfg.render;
        let camera = Camera {
            azimuth: r.azimuth,
            elevation: r.elevation,
            scale: r.scale,
        };
        let canvas = ctx.canvas();
        let svg = render_network_svg(&scene, None, &highlights, &camera, &canvas)?;

        let mut written = vec![
            ctx.write("scene.json", export_scene_json(&scene))?,
            ctx.write_json(NETWORK_ANALYSIS_FILE, &analysis)?,
            ctx.write("network.svg", svg)?,
        ];

        let frames_dir = ctx.out.join("frames");
        if frames_dir.exists() {
            fs::remove_dir_all(&frames_dir).map_err(|e| CliError::io(&frames_dir, e))?;
        }
        if r.frames > 0 {
            let anim = animate(&scene.ideas, r.frames, tau, n.s_min)?;
            if let Some(w) = &anim.warning {
                log::warn!("frames: {w}");
            }
            if !anim.frames.is_empty() {
                let paths = render_frames(&scene, &anim.frames, &highlights, &camera, &canvas, &frames_dir)?;
                for path in paths {
                    let name = path.file_name().expect("frame file name").to_string_lossy();
                    written.push(format!("frames/{name}"));
                }
            }
        }
        Ok(written)
    })
}
