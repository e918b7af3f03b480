use super::RenderError;

#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    /// Cluster colours, reused cyclically.
    pub clusters: Vec<String>,
    pub idea: String,
    pub highlight: String,
    pub trajectory: String,
    pub base: String,
    pub human: String,
    pub social: String,
    pub idea_edge: String,
    pub text: String,
    /// Terrain colour ramp from low to high.
    pub ramp: Vec<[u8; 3]>,
    /// Hue (degrees) of idea nodes in the network view; saturation varies.
    pub idea_hue: f64,
}

impl Default for Palette {
    fn default() -> Self {
        // Okabe–Ito colours.
        let clusters = ["#0072B2", "#E69F00", "#009E73", "#CC79A7", "#56B4E9", "#D55E00", "#F0E442", "#000000"];
        Self {
            clusters: clusters.iter().map(|s| s.to_string()).collect(),
            idea: "#4D4D4D".into(),
            highlight: "#FF0000".into(),
            trajectory: "#222222".into(),
            base: "#E8E8E8".into(),
            human: "#333333".into(),
            social: "#9A9A9A".into(),
            idea_edge: "#6BAED6".into(),
            text: "#111111".into(),
            ramp: vec![[26, 150, 65], [255, 255, 191], [166, 97, 26]],
            idea_hue: 210.0,
        }
    }
}

impl Palette {
    pub fn cluster(&self, i: usize) -> &str {
        &self.clusters[i % self.clusters.len()]
    }

    /// Colour at `t ∈ [0, 1]` along the terrain ramp.
    pub fn ramp_at(&self, t: f64) -> String {
        let t = t.clamp(0.0, 1.0);
        let segs = (self.ramp.len() - 1) as f64;
        let pos = t * segs;
        let i = (pos.floor() as usize).min(self.ramp.len() - 2);
        let f = pos - i as f64;
        let c: Vec<u8> = (0..3)
            .map(|k| {
                let a = self.ramp[i][k] as f64;
                let b = self.ramp[i + 1][k] as f64;
                (a + (b - a) * f).round() as u8
            })
            .collect();
        format!("#{:02X}{:02X}{:02X}", c[0], c[1], c[2])
    }
}

/// `hsl(h, s, l)` as `#RRGGBB`, with `s` and `l` in `[0, 1]`.
pub(crate) fn hsl_hex(h: f64, s: f64, l: f64) -> String {
    let s = s.clamp(0.0, 1.0);
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = (h.rem_euclid(360.0)) / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02X}{:02X}{:02X}", to(r), to(g), to(b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanvasSpec {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub palette: Palette,
    pub x_label: String,
    pub y_label: String,
}

impl Default for CanvasSpec {
    fn default() -> Self {
        Self {
            width: 640.0,
            height: 640.0,
            margin: 48.0,
            palette: Palette::default(),
            x_label: "PC1".into(),
            y_label: "PC2".into(),
        }
    }
}

impl CanvasSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        if !(self.width > 0.0 && self.height > 0.0) {
            return Err(RenderError::InvalidCanvas("width and height must be positive".into()));
        }
        if !(self.margin >= 0.0) || 2.0 * self.margin >= self.width.min(self.height) {
            return Err(RenderError::InvalidCanvas("margins leave no drawing area".into()));
        }
        if self.palette.clusters.is_empty() || self.palette.ramp.len() < 2 {
            return Err(RenderError::InvalidCanvas("palette needs cluster colours and a ramp of ≥ 2 stops".into()));
        }
        Ok(())
    }

    pub fn plot_width(&self) -> f64 {
        self.width - 2.0 * self.margin
    }

    pub fn plot_height(&self) -> f64 {
        self.height - 2.0 * self.margin
    }
}
