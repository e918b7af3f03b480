use std::collections::HashMap;

use super::{canvas::hsl_hex, CanvasSpec, RenderError, SvgDoc};
use crate::network::{FrameSpec, NetworkScene};
use crate::scalar::Real;

/// Orthographic camera: rotate by `azimuth` about z, then tilt by
/// `elevation` about the screen x axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    pub azimuth: f64,
    pub elevation: f64,
    /// Pixels per scene unit.
    pub scale: f64,
}

impl Default for Camera {
    fn default() -> Self {
        Self {
            azimuth: 0.0,
            elevation: 0.35,
            scale: 220.0,
        }
    }
}

impl Camera {
    pub fn validate(&self) -> Result<(), RenderError> {
        let half = std::f64::consts::FRAC_PI_2;
        if !(self.elevation.abs() < half) {
            return Err(RenderError::DegenerateCamera(self.elevation));
        }
        if !(self.scale > 0.0) || !self.azimuth.is_finite() {
            return Err(RenderError::InvalidArgument("camera scale must be positive and azimuth finite".into()));
        }
        Ok(())
    }
}

/// `(screen_x, screen_up, depth)` of a scene point; larger depth is farther.
pub fn project_point(camera: &Camera, p: [f64; 3]) -> (f64, f64, f64) {
    let (sa, ca) = camera.azimuth.sin_cos();
    let (se, ce) = camera.elevation.sin_cos();
    let x1 = p[0] * ca - p[1] * sa;
    let y1 = p[0] * sa + p[1] * ca;
    (x1, y1 * se + p[2] * ce, y1 * ce - p[2] * se)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NetworkHighlights<'a> {
    /// Idea ids drawn in the highlight colour.
    pub innovators: &'a [String],
}

enum Item {
    Line((f64, f64), (f64, f64), &'static str),
    Dot((f64, f64), f64, String, &'static str, String),
}

/// The Idea Network seen through `camera`. With a frame, only its visible
/// ideas are drawn, using its saturations.
pub fn render_network_svg<T: Real>(
    scene: &NetworkScene<T>,
    frame: Option<&FrameSpec<T>>,
    highlights: &NetworkHighlights<'_>,
    camera: &Camera,
    canvas: &CanvasSpec,
) -> Result<String, RenderError> {
    canvas.validate()?;
    camera.validate()?;
    let pal = &canvas.palette;
    let (cx, cy) = (canvas.width / 2.0, canvas.height / 2.0);
    let lift = 0.5 * camera.elevation.cos();
    let screen = |p: [f64; 3]| {
        let (x, up, depth) = project_point(camera, p);
        ((cx + camera.scale * x, cy - camera.scale * (up - lift)), depth)
    };

    let ring: Vec<[f64; 3]> = scene
        .ring
        .iter()
        .map(|p| [p[0].as_f64(), p[1].as_f64(), p[2].as_f64()])
        .collect();
    let mut shown: Vec<(usize, f64)> = Vec::new();
    match frame {
        Some(f) => {
            let index: HashMap<&str, usize> = scene.ideas.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
            for (id, s) in f.visible.iter().zip(&f.saturation) {
                let i = *index.get(id.as_str()).ok_or_else(|| {
                    RenderError::InvalidArgument(format!("frame {} shows unknown idea `{id}`", f.index))
                })?;
                shown.push((i, s.as_f64()));
            }
        }
        None => shown.extend(scene.ideas.iter().enumerate().map(|(i, n)| (i, n.saturation.as_f64()))),
    }
    let pos_of: HashMap<&str, [f64; 3]> = shown
        .iter()
        .map(|&(i, _)| {
            let n = &scene.ideas[i];
            (n.id.as_str(), [n.x.as_f64(), n.y.as_f64(), n.z.as_f64()])
        })
        .collect();

    let mut items: Vec<(f64, Item)> = Vec::new();
    for &(a, b) in &scene.social_edges {
        let (pa, da) = screen(ring[a]);
        let (pb, db) = screen(ring[b]);
        items.push(((da + db) / 2.0, Item::Line(pa, pb, "social")));
    }
    for (i, &p) in ring.iter().enumerate() {
        let (s, d) = screen(p);
        let label = scene_label(i);
        items.push((d, Item::Dot(s, 6.0, pal.human.clone(), "human", label)));
    }
    for e in &scene.idea_edges {
        if let (Some(&a), Some(&b)) = (pos_of.get(e.from.as_str()), pos_of.get(e.to.as_str())) {
            let (pa, da) = screen(a);
            let (pb, db) = screen(b);
            items.push(((da + db) / 2.0, Item::Line(pa, pb, "idea-edge")));
        }
    }
    for &(i, sat) in &shown {
        let n = &scene.ideas[i];
        let (s, d) = screen(pos_of[n.id.as_str()]);
        let innovator = highlights.innovators.iter().any(|id| id == &n.id);
        let (fill, class) = if innovator {
            (pal.highlight.clone(), "idea innovator")
        } else {
            (hsl_hex(pal.idea_hue, sat, 0.5), "idea")
        };
        items.push((d, Item::Dot(s, 4.0, fill, class, n.id.clone())));
    }
    items.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut doc = SvgDoc::new(canvas.width, canvas.height);
    doc.rect(0.0, 0.0, canvas.width, canvas.height, "#FFFFFF", "background");
    for (_, item) in &items {
        match item {
            Item::Line(a, b, class) => {
                let stroke = if *class == "social" { &pal.social } else { &pal.idea_edge };
                doc.line(*a, *b, stroke, 1.0, class);
            }
            Item::Dot(p, r, fill, class, title) => doc.circle(p.0, p.1, *r, fill, class, Some(title)),
        }
    }
    let cursor = frame.map(|f| f.cursor).or(scene.cursor);
    if let Some(c) = cursor {
        doc.text(
            canvas.margin,
            canvas.margin / 2.0 + 6.0,
            12.0,
            "start",
            "cursor",
            &c.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        );
    }
    Ok(doc.finish())
}

fn scene_label(i: usize) -> String {
    format!("participant {i}")
}
