use std::io::Write;

use serde_json::{json, Value};

use super::{Peak, TerrainGrid};
use crate::scalar::Real;

pub const ESRI_NODATA: f64 = -9999.0;

/// Terrain as JSON with row-major `elevation` and `support` (row 0 at y = 0).
/// Unsupported cells appear as `null` elevation.
pub fn terrain_json<T: Real + serde::Serialize>(grid: &TerrainGrid<T>) -> Value {
    let elevation: Vec<Value> = (0..grid.elevation.len())
        .map(|i| {
            if grid.is_supported(i) {
                json!(grid.elevation[i])
            } else {
                Value::Null
            }
        })
        .collect();
    json!({
        "resolution": grid.resolution,
        "bandwidth": grid.bandwidth,
        "metric": grid.metric,
        "interpolation": grid.interpolation,
        "z_min": grid.z_min,
        "z_max": grid.z_max,
        "elevation": elevation,
        "support": grid.support,
    })
}

/// ESRI ASCII grid, northmost row first; unsupported cells are nodata.
pub fn write_esri_ascii<T: Real, W: Write>(mut w: W, grid: &TerrainGrid<T>) -> std::io::Result<()> {
    let g = grid.resolution;
    writeln!(w, "ncols {g}")?;
    writeln!(w, "nrows {g}")?;
    writeln!(w, "xllcenter 0")?;
    writeln!(w, "yllcenter 0")?;
    writeln!(w, "cellsize {}", grid.cell_size())?;
    writeln!(w, "nodata_value {ESRI_NODATA}")?;
    for row in (0..g).rev() {
        let line: Vec<String> = (0..g)
            .map(|col| {
                let i = grid.index(row, col);
                if grid.is_supported(i) {
                    grid.elevation[i].to_string()
                } else {
                    ESRI_NODATA.to_string()
                }
            })
            .collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

/// `rank,x,y,elevation,prominence`, rank starting at 1.
pub fn write_peaks_csv<T: Real, W: Write>(w: W, peaks: &[Peak<T>]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["rank", "x", "y", "elevation", "prominence"])?;
    for (i, p) in peaks.iter().enumerate() {
        out.write_record([
            (i + 1).to_string(),
            p.x.to_string(),
            p.y.to_string(),
            p.elevation.to_string(),
            p.prominence.to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)
}
