use std::io::Write;

use super::CloudAnalytics;
use crate::scalar::Real;

fn finish<W: Write>(mut out: csv::Writer<W>) -> csv::Result<()> {
    out.flush().map_err(csv::Error::from)
}

/// `id,cluster,pc1,pc2`
pub fn write_clusters_csv<T: Real, W: Write>(w: W, a: &CloudAnalytics<T>) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["id", "cluster", "pc1", "pc2"])?;
    let positions: std::collections::HashMap<&str, _> = a
        .slices
        .iter()
        .flat_map(|s| s.idea_ids.iter().map(String::as_str).zip(s.points.iter()))
        .collect();
    for (id, label) in a.clusters.idea_ids.iter().zip(&a.clusters.labels) {
        let p = positions[id.as_str()];
        out.write_record([id.clone(), label.to_string(), p[0].to_string(), p[1].to_string()])?;
    }
    finish(out)
}

/// `participant,step,id,pc1,pc2,cumulative_distance`
pub fn write_trajectories_csv<T: Real, W: Write>(w: W, a: &CloudAnalytics<T>) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["participant", "step", "id", "pc1", "pc2", "cumulative_distance"])?;
    for t in &a.trajectories {
        let mut acc = T::zero();
        for (step, (id, p)) in t.idea_ids.iter().zip(&t.waypoints).enumerate() {
            if step > 0 {
                acc += crate::scalar::dist(&t.waypoints[step - 1], p);
            }
            out.write_record([
                t.participant.to_string(),
                step.to_string(),
                id.clone(),
                p[0].to_string(),
                p[1].to_string(),
                acc.to_string(),
            ])?;
        }
    }
    finish(out)
}

/// `day,n_ideas,centroid_pc1,centroid_pc2,dispersion`
pub fn write_slices_csv<T: Real, W: Write>(w: W, a: &CloudAnalytics<T>) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["day", "n_ideas", "centroid_pc1", "centroid_pc2", "dispersion"])?;
    for s in &a.slices {
        let (cx, cy) = s
            .centroid
            .map_or((String::new(), String::new()), |c| (c[0].to_string(), c[1].to_string()));
        out.write_record([
            s.day.to_string(),
            s.idea_ids.len().to_string(),
            cx,
            cy,
            s.dispersion.to_string(),
        ])?;
    }
    finish(out)
}

/// `day,id,nn_distance,threshold,novel`
pub fn write_novelty_csv<T: Real, W: Write>(w: W, a: &CloudAnalytics<T>) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["day", "id", "nn_distance", "threshold", "novel"])?;
    for d in &a.novelty {
        for ((id, dist), novel) in d.idea_ids.iter().zip(&d.distances).zip(&d.novel) {
            out.write_record([
                d.day.to_string(),
                id.clone(),
                dist.to_string(),
                d.threshold.to_string(),
                novel.to_string(),
            ])?;
        }
    }
    finish(out)
}
