use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{
    read_text, Input, Pipeline, StageStatus, ANALYTICS_FILE, GEOGRAPHY_FILE, NETWORK_ANALYSIS_FILE, REPORT_FILE,
};
use crate::error::CliError;

fn read_json(path: &Path, stage: &'static str) -> Result<Value, CliError> {
    if !path.exists() {
        return Err(CliError::MissingArtifact {
            path: path.to_path_buf(),
            stage,
        });
    }
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn optional_json(path: &Path) -> Result<Option<Value>, CliError> {
    if path.exists() {
        read_json(path, "report").map(Some)
    } else {
        Ok(None)
    }
}

/// Trajectories sorted by total distance, longest first, at most `k`.
fn top_trajectories(analytics: &Value, k: usize) -> Vec<Value> {
    let mut rows: Vec<(u64, usize, f64)> = analytics["trajectories"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|t| {
                    (
                        t["participant"].as_u64().unwrap_or(0),
                        t["idea_ids"].as_array().map_or(0, Vec::len),
                        t["total_distance"].as_f64().unwrap_or(0.0),
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    rows.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));
    rows.into_iter()
        .take(k)
        .map(|(p, n, d)| json!({ "participant": p, "ideas": n, "total_distance": d }))
        .collect()
}

fn build_report(analytics: &Value, geography: Option<&Value>, network: Option<&Value>) -> Value {
    let novel = analytics["novelty"]
        .as_array()
        .map_or(0, |days| {
            days.iter()
                .flat_map(|d| d["novel"].as_array().cloned().unwrap_or_default())
                .filter(|f| f.as_bool() == Some(true))
                .count()
        });
    json!({
        "ideas": analytics["clusters"]["idea_ids"].as_array().map_or(0, Vec::len),
        "clusters": {
            "k": analytics["clusters"]["k"],
            "inertia": analytics["clusters"]["inertia"],
        },
        "avg_dis": analytics["diversity"]["avg_dis"],
        "dispersion_series": analytics["dispersion_series"],
        "novel_ideas": novel,
        "top_trajectories": top_trajectories(analytics, 3),
        "geography": geography.map(|g| json!({
            "metric": g["metric"],
            "peaks": g["peaks"],
            "score_length_rank_correlation": g["score_length_rank_correlation"],
        })),
        "network": network.map(|n| json!({
            "innovator_ideas": n["innovators"]["flagged_ideas"],
            "innovator_authors": n["innovators"]["flagged_authors"],
            "non_contributors": n["contributions"]["non_contributors"],
            "gini": n["contributions"]["gini"],
        })),
    })
}

fn summary_text(r: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ideas: {}", r["ideas"]);
    let _ = writeln!(s, "clusters: k = {}", r["clusters"]["k"]);
    if let Some(d) = r["avg_dis"].as_f64() {
        let _ = writeln!(s, "Avg_dis: {d:.4}");
    }
    let _ = writeln!(s, "novel ideas: {}", r["novel_ideas"]);
    let _ = writeln!(s, "longest trajectories:");
    for t in r["top_trajectories"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "  participant {}: {} ideas, distance {:.4}",
            t["participant"],
            t["ideas"],
            t["total_distance"].as_f64().unwrap_or(0.0)
        );
    }
    if let Some(g) = r["geography"].as_object() {
        let _ = writeln!(s, "terrain peaks: {}", g["peaks"]);
    }
    if let Some(n) = r["network"].as_object() {
        let _ = writeln!(s, "innovator ideas: {}", n["innovator_ideas"]);
        let _ = writeln!(s, "non-contributors: {}", n["non_contributors"]);
        if let Some(g) = n["gini"].as_f64() {
            let _ = writeln!(s, "contribution Gini: {g:.4}");
        }
    }
    s
}

pub(super) fn run(p: &mut Pipeline) -> Result<StageStatus, CliError> {
    let analytics_path = p.artifact(ANALYTICS_FILE);
    let geography_path = p.artifact(GEOGRAPHY_FILE);
    let network_path = p.artifact(NETWORK_ANALYSIS_FILE);
    let mut inputs = vec![Input::artifact("analytics", analytics_path.clone(), "cloud")];
    if geography_path.exists() {
        inputs.push(Input::artifact("geography", geography_path.clone(), "geography"));
    }
    if network_path.exists() {
        inputs.push(Input::artifact("network", network_path.clone(), "network"));
    }
    p.cached("report", Value::Null, &inputs, |ctx| {
        let analytics = read_json(&analytics_path, "cloud")?;
        let geography = optional_json(&geography_path)?;
        let network = optional_json(&network_path)?;
        let report = build_report(&analytics, geography.as_ref(), network.as_ref());
        let summary = summary_text(&report);
        print!("{summary}");
        Ok(vec![ctx.write_json(REPORT_FILE, &report)?, ctx.write("summary.txt", summary)?])
    })
}

/// Ranks finished runs by Avg_dis, most diverse first, and writes
/// `comparison.json` into `out`.
pub fn compare_runs(dirs: &[PathBuf], out: &Path) -> Result<Value, CliError> {
    let mut rows = Vec::with_capacity(dirs.len());
    for dir in dirs {
        let r = read_json(&dir.join(REPORT_FILE), "report")?;
        let avg = r["avg_dis"]
            .as_f64()
            .ok_or_else(|| CliError::Validation(format!("{}: report has no avg_dis", dir.display())))?;
        rows.push((dir.display().to_string(), avg, r["clusters"]["k"].clone(), r["ideas"].clone()));
    }
    rows.sort_by(|a, b| b.1.total_cmp(&a.1));
    let ranked: Vec<Value> = rows
        .iter()
        .enumerate()
        .map(|(i, (run, avg, k, n))| json!({ "rank": i + 1, "run": run, "avg_dis": avg, "k": k, "ideas": n }))
        .collect();
    for r in &ranked {
        println!("{:>3}  {:.4}  {}", r["rank"], r["avg_dis"].as_f64().unwrap_or(0.0), r["run"].as_str().unwrap_or(""));
    }
    let doc = json!({ "ranking": ranked });
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let path = out.join("comparison.json");
    let mut text = serde_json::to_string_pretty(&doc).expect("comparison serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(doc)
}
