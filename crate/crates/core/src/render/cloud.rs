use super::{svg::num, CanvasSpec, RenderError, SvgDoc};
use crate::analytics::{path_length, DiversityReport};
use crate::scalar::{Point2, Real};

#[derive(Debug, Clone, Copy)]
pub struct TrajectoryOverlay<'a, T> {
    pub participant: Option<usize>,
    pub waypoints: &'a [Point2<T>],
}

/// Optional layers of the Idea Cloud plot. Per-idea slices must align with
/// the points.
#[derive(Debug, Clone, Copy)]
pub struct CloudOptions<'a, T> {
    pub clusters: Option<&'a [usize]>,
    pub labels: Option<&'a [String]>,
    pub trajectory: Option<TrajectoryOverlay<'a, T>>,
    pub novelty: Option<&'a [bool]>,
    pub diversity: Option<DiversityReport<T>>,
    /// Day index per idea; tiles one panel per day, left to right.
    pub days: Option<&'a [usize]>,
    pub title: Option<&'a str>,
}

impl<T> Default for CloudOptions<'_, T> {
    fn default() -> Self {
        Self {
            clusters: None,
            labels: None,
            trajectory: None,
            novelty: None,
            diversity: None,
            days: None,
            title: None,
        }
    }
}

fn check_len<U>(name: &str, v: Option<&[U]>, n: usize) -> Result<(), RenderError> {
    match v {
        Some(v) if v.len() != n => Err(RenderError::InvalidArgument(format!(
            "{name} has {} entries for {n} ideas",
            v.len()
        ))),
        _ => Ok(()),
    }
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Frame {
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let fx = (p[0] - self.lo[0]) / (self.hi[0] - self.lo[0]);
        let fy = (p[1] - self.lo[1]) / (self.hi[1] - self.lo[1]);
        (self.x0 + fx * self.w, self.y0 + (1.0 - fy) * self.h)
    }
}

fn axes(doc: &mut SvgDoc, f: &Frame, canvas: &CanvasSpec) {
    let c = &canvas.palette.text;
    let bottom = f.y0 + f.h;
    doc.line((f.x0, bottom), (f.x0 + f.w, bottom), c, 1.0, "axis");
    doc.line((f.x0, f.y0), (f.x0, bottom), c, 1.0, "axis");
    doc.text(f.x0 + f.w / 2.0, bottom + 28.0, 12.0, "middle", "axis-label", &canvas.x_label);
    doc.text(f.x0 - 28.0, f.y0 + f.h / 2.0, 12.0, "middle", "axis-label", &canvas.y_label);
}

/// Scatter of ideas in the PC1–PC2 plane, one circle per idea.
pub fn render_cloud_svg<T: Real>(
    points: &[Point2<T>],
    canvas: &CanvasSpec,
    opts: &CloudOptions<'_, T>,
) -> Result<String, RenderError> {
    canvas.validate()?;
    let n = points.len();
    check_len("cluster labels", opts.clusters, n)?;
    check_len("idea labels", opts.labels, n)?;
    check_len("novelty flags", opts.novelty, n)?;
    check_len("day indices", opts.days, n)?;
    if let Some(t) = &opts.trajectory {
        if t.participant.is_none() {
            return Err(RenderError::TrajectoryWithoutParticipant);
        }
        if opts.days.is_some() {
            return Err(RenderError::InvalidArgument(
                "a trajectory overlay cannot be combined with day panels".into(),
            ));
        }
    }

    let pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0].as_f64(), p[1].as_f64()]).collect();
    let way: Vec<[f64; 2]> = opts
        .trajectory
        .map(|t| t.waypoints.iter().map(|p| [p[0].as_f64(), p[1].as_f64()]).collect())
        .unwrap_or_default();
    let mut lo = [0.0f64, 0.0];
    let mut hi = [1.0f64, 1.0];
    for p in pts.iter().chain(&way) {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }

    let pal = &canvas.palette;
    let mut doc = SvgDoc::new(canvas.width, canvas.height);
    doc.rect(0.0, 0.0, canvas.width, canvas.height, "#FFFFFF", "background");
    if let Some(title) = opts.title {
        doc.text(canvas.width / 2.0, canvas.margin / 2.0, 14.0, "middle", "title", title);
    }

    let panels = opts.days.map_or(1, |d| d.iter().max().map_or(1, |m| m + 1));
    let gap = if panels > 1 { 12.0 } else { 0.0 };
    let pw = (canvas.plot_width() - gap * (panels - 1) as f64) / panels as f64;
    let frames: Vec<Frame> = (0..panels)
        .map(|d| Frame {
            x0: canvas.margin + d as f64 * (pw + gap),
            y0: canvas.margin,
            w: pw,
            h: canvas.plot_height(),
            lo,
            hi,
        })
        .collect();
    for (d, f) in frames.iter().enumerate() {
        axes(&mut doc, f, canvas);
        if opts.days.is_some() {
            doc.text(f.x0 + f.w / 2.0, f.y0 - 6.0, 12.0, "middle", "panel-title", &format!("Day {}", d + 1));
        }
    }

    for (i, p) in pts.iter().enumerate() {
        let f = &frames[opts.days.map_or(0, |d| d[i])];
        let (x, y) = f.map(*p);
        let novel = opts.novelty.is_some_and(|v| v[i]);
        let fill = if novel {
            pal.highlight.as_str()
        } else {
            opts.clusters.map_or(pal.idea.as_str(), |c| pal.cluster(c[i]))
        };
        let class = if novel { "idea novel" } else { "idea" };
        doc.circle(x, y, 4.0, fill, class, opts.labels.map(|l| l[i].as_str()));
        if let Some(labels) = opts.labels {
            doc.text(x + 6.0, y - 6.0, 10.0, "start", "idea-label", &labels[i]);
        }
    }

    if let Some(t) = &opts.trajectory {
        let screen: Vec<(f64, f64)> = way.iter().map(|p| frames[0].map(*p)).collect();
        doc.polyline(&screen, &pal.trajectory, 1.5, "trajectory");
        let total = path_length(t.waypoints).as_f64();
        doc.text(
            canvas.margin + 4.0,
            canvas.margin + 14.0,
            12.0,
            "start",
            "trajectory-label",
            &format!("participant {}: total = {total:.2}", t.participant.expect("checked above")),
        );
    }
    if let Some(d) = &opts.diversity {
        doc.text(
            canvas.width - canvas.margin,
            canvas.margin + 14.0,
            12.0,
            "end",
            "diversity-label",
            &format!("Avg_dis = {} (n = {})", num(d.avg_dis.as_f64()), d.count),
        );
    }
    Ok(doc.finish())
}
