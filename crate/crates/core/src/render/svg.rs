use std::fmt::Write;

/// Fixed three-decimal formatting with negative zero folded to zero.
pub(crate) fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Append-only SVG document with an explicit viewBox.
#[derive(Debug, Clone)]
pub struct SvgDoc {
    width: f64,
    height: f64,
    body: String,
}

impl SvgDoc {
    pub fn new(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, class: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
            num(x),
            num(y),
            num(w),
            num(h)
        );
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str, class: &str, title: Option<&str>) {
        let _ = write!(
            self.body,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}""#,
            num(cx),
            num(cy),
            num(r)
        );
        match title {
            Some(t) => {
                let _ = writeln!(self.body, "><title>{}</title></circle>", escape(t));
            }
            None => self.body.push_str("/>\n"),
        }
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64, class: &str) {
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1),
            num(width)
        );
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64, class: &str) {
        let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", num(p.0), num(p.1))).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline class="{class}" points="{}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            coords.join(" "),
            num(width)
        );
    }

    /// One path made of several rings; `closed` rings end with `Z`.
    pub fn path(&mut self, rings: &[(Vec<(f64, f64)>, bool)], fill: &str, stroke: &str, class: &str) {
        let mut d = String::new();
        for (ring, closed) in rings {
            for (i, p) in ring.iter().enumerate() {
                let _ = write!(d, "{}{},{} ", if i == 0 { 'M' } else { 'L' }, num(p.0), num(p.1));
            }
            if *closed {
                d.push_str("Z ");
            }
        }
        let _ = writeln!(
            self.body,
            r#"<path class="{class}" d="{}" fill="{fill}" fill-rule="evenodd" stroke="{stroke}"/>"#,
            d.trim_end()
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, class: &str, content: &str) {
        let _ = writeln!(
            self.body,
            r#"<text class="{class}" x="{}" y="{}" font-size="{}" font-family="sans-serif" text-anchor="{anchor}">{}</text>"#,
            num(x),
            num(y),
            num(size),
            escape(content)
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body,
            w = num(self.width),
            h = num(self.height),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(num(-0.0001), "0.000");
        assert_eq!(num(1.23456), "1.235");
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
        let mut d = SvgDoc::new(10.0, 20.0);
        d.circle(1.0, 2.0, 3.0, "#000", "idea", Some("<x>"));
        let s = d.finish();
        assert!(s.contains(r#"viewBox="0 0 10.000 20.000""#));
        assert!(s.contains("<title>&lt;x&gt;</title>"));
    }
}
