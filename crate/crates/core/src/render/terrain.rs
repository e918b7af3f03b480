use super::{contour::Contour, iso_lines, superlevel_loops, CanvasSpec, RenderError, SvgDoc};
use crate::geography::{OverlayMarker, Peak, TerrainGrid};
use crate::scalar::Real;

pub const DEFAULT_LEVELS: usize = 10;

#[derive(Debug, Clone, Copy)]
pub struct TerrainOptions<'a, T> {
    /// Number of iso-bands; thresholds split the elevation range evenly.
    pub levels: usize,
    pub contour_lines: bool,
    pub peaks: Option<&'a [Peak<T>]>,
    pub markers: Option<&'a [OverlayMarker<T>]>,
    pub title: Option<&'a str>,
}

impl<T> Default for TerrainOptions<'_, T> {
    fn default() -> Self {
        Self {
            levels: DEFAULT_LEVELS,
            contour_lines: true,
            peaks: None,
            markers: None,
            title: None,
        }
    }
}

/// `a`, `b`, … `z`, then `p27`, `p28`, … for rank indices from 0.
pub fn peak_label(rank: usize) -> String {
    if rank < 26 {
        ((b'a' + rank as u8) as char).to_string()
    } else {
        format!("p{}", rank + 1)
    }
}

/// Filled iso-band map of the terrain with optional contour lines, peak
/// labels and participant markers.
pub fn render_terrain_svg<T: Real>(
    grid: &TerrainGrid<T>,
    canvas: &CanvasSpec,
    opts: &TerrainOptions<'_, T>,
) -> Result<String, RenderError> {
    canvas.validate()?;
    if opts.levels < 1 {
        return Err(RenderError::InvalidArgument("at least one level is required".into()));
    }
    let g = grid.resolution;
    let pal = &canvas.palette;
    let (pw, ph) = (canvas.plot_width(), canvas.plot_height());
    let last = (g - 1) as f64;
    let to_screen = |p: [f64; 2]| (canvas.margin + p[0] / last * pw, canvas.margin + (1.0 - p[1] / last) * ph);
    let unit_to_screen = |x: f64, y: f64| (canvas.margin + x * pw, canvas.margin + (1.0 - y) * ph);
    let rings = |loops: &[Contour]| -> Vec<(Vec<(f64, f64)>, bool)> {
        loops
            .iter()
            .map(|l| (l.points.iter().map(|&p| to_screen(p)).collect(), l.closed))
            .collect()
    };

    let mut doc = SvgDoc::new(canvas.width, canvas.height);
    doc.rect(0.0, 0.0, canvas.width, canvas.height, "#FFFFFF", "background");
    doc.rect(canvas.margin, canvas.margin, pw, ph, &pal.base, "base");
    if let Some(title) = opts.title {
        doc.text(canvas.width / 2.0, canvas.margin / 2.0, 14.0, "middle", "title", title);
    }

    let supported: Vec<f64> = (0..g * g).map(|i| if grid.is_supported(i) { 1.0 } else { 0.0 }).collect();
    let elevation: Vec<f64> = grid.elevation.iter().map(|z| z.as_f64()).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, &z) in elevation.iter().enumerate() {
        if supported[i] > 0.0 {
            lo = lo.min(z);
            hi = hi.max(z);
        }
    }

    if lo.is_finite() {
        let region = superlevel_loops(&supported, g, g, 0.5);
        doc.path(&rings(&region), &pal.ramp_at(0.0), "none", "band");
        let flat = hi - lo <= 1e-12 * hi.abs().max(lo.abs()).max(1.0);
        if !flat {
            let step = (hi - lo) / opts.levels as f64;
            let denom = (opts.levels.max(2) - 1) as f64;
            for j in 1..opts.levels {
                let t = lo + j as f64 * step;
                let loops = superlevel_loops(&elevation, g, g, t);
                if !loops.is_empty() {
                    doc.path(&rings(&loops), &pal.ramp_at(j as f64 / denom), "none", "band");
                }
            }
            if opts.contour_lines {
                for j in 1..opts.levels {
                    let t = lo + j as f64 * step;
                    for line in iso_lines(&elevation, g, g, t) {
                        doc.path(&rings(std::slice::from_ref(&line)), "none", &pal.text, "contour");
                    }
                }
            }
        }
    }

    if let Some(peaks) = opts.peaks {
        for (rank, p) in peaks.iter().enumerate() {
            let (x, y) = unit_to_screen(p.x.as_f64(), p.y.as_f64());
            doc.circle(x, y, 3.0, &pal.text, "peak", None);
            doc.text(x + 5.0, y - 5.0, 13.0, "start", "peak-label", &peak_label(rank));
        }
    }
    if let Some(markers) = opts.markers {
        for m in markers {
            let (x, y) = unit_to_screen(m.position[0].as_f64(), m.position[1].as_f64());
            let title = format!("{} (score {})", m.id, super::svg::num(m.score.as_f64()));
            doc.circle(x, y, 4.5, &pal.highlight, "marker", Some(&title));
        }
    }
    Ok(doc.finish())
}
