use std::collections::HashMap;

/// A contour in grid units: x is the column, y the row.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub level: f64,
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

struct Field<'a> {
    values: &'a [f64],
    rows: usize,
    cols: usize,
}

impl Field<'_> {
    fn v(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.cols + c]
    }

    // Edge ids: 2·node for the edge to the right of a node, 2·node + 1 for
    // the edge above it.
    fn h(&self, r: usize, c: usize) -> usize {
        2 * (r * self.cols + c)
    }

    fn up(&self, r: usize, c: usize) -> usize {
        2 * (r * self.cols + c) + 1
    }

    fn point(&self, edge: usize, level: f64) -> [f64; 2] {
        let node = edge / 2;
        let (r, c) = (node / self.cols, node % self.cols);
        let (r2, c2) = if edge % 2 == 0 { (r, c + 1) } else { (r + 1, c) };
        let (a, b) = (self.v(r, c), self.v(r2, c2));
        let t = if b == a { 0.5 } else { ((level - a) / (b - a)).clamp(0.0, 1.0) };
        [c as f64 + t * (c2 as f64 - c as f64), r as f64 + t * (r2 as f64 - r as f64)]
    }

    fn segments(&self, level: f64) -> Vec<(usize, usize)> {
        let mut segs = Vec::new();
        for r in 0..self.rows.saturating_sub(1) {
            for c in 0..self.cols.saturating_sub(1) {
                let (bl, br, tr, tl) = (self.v(r, c), self.v(r, c + 1), self.v(r + 1, c + 1), self.v(r + 1, c));
                let case = (bl >= level) as u8
                    | ((br >= level) as u8) << 1
                    | ((tr >= level) as u8) << 2
                    | ((tl >= level) as u8) << 3;
                let (b, rt, t, l) = (self.h(r, c), self.up(r, c + 1), self.h(r + 1, c), self.up(r, c));
                let center_in = (bl + br + tr + tl) / 4.0 >= level;
                match case {
                    0 | 15 => {}
                    1 | 14 => segs.push((l, b)),
                    2 | 13 => segs.push((b, rt)),
                    3 | 12 => segs.push((l, rt)),
                    4 | 11 => segs.push((rt, t)),
                    6 | 9 => segs.push((b, t)),
                    7 | 8 => segs.push((l, t)),
                    5 if center_in => segs.extend([(l, t), (b, rt)]),
                    5 => segs.extend([(l, b), (rt, t)]),
                    10 if center_in => segs.extend([(l, b), (rt, t)]),
                    10 => segs.extend([(b, rt), (l, t)]),
                    _ => unreachable!(),
                }
            }
        }
        segs
    }

    fn trace(&self, level: f64) -> Vec<Contour> {
        let segs = self.segments(level);
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &(a, b)) in segs.iter().enumerate() {
            adj.entry(a).or_default().push(i);
            adj.entry(b).or_default().push(i);
        }
        let mut used = vec![false; segs.len()];
        let mut out = Vec::new();
        let walk = |start: usize, first: usize, used: &mut Vec<bool>| {
            let mut edges = vec![start];
            let (mut at, mut seg) = (start, first);
            loop {
                used[seg] = true;
                let (a, b) = segs[seg];
                let other = if a == at { b } else { a };
                edges.push(other);
                match adj[&other].iter().find(|&&s| !used[s]) {
                    Some(&s) => {
                        at = other;
                        seg = s;
                    }
                    None => break,
                }
            }
            let closed = edges.len() > 2 && edges.first() == edges.last();
            if closed {
                edges.pop();
            }
            Contour {
                level,
                points: edges.iter().map(|&e| self.point(e, level)).collect(),
                closed,
            }
        };
        for s in 0..segs.len() {
            if used[s] {
                continue;
            }
            let (a, b) = segs[s];
            if adj[&a].len() == 1 {
                out.push(walk(a, s, &mut used));
            } else if adj[&b].len() == 1 {
                out.push(walk(b, s, &mut used));
            }
        }
        for s in 0..segs.len() {
            if !used[s] {
                out.push(walk(segs[s].0, s, &mut used));
            }
        }
        out
    }
}

/// Marching-squares iso-lines at `level` over a row-major `rows × cols`
/// field. Lines that reach the border stay open; saddles are resolved by
/// the cell-centre average.
pub fn iso_lines(values: &[f64], rows: usize, cols: usize, level: f64) -> Vec<Contour> {
    assert_eq!(values.len(), rows * cols, "field size");
    Field { values, rows, cols }.trace(level)
}

/// Closed outlines of `{v ≥ level}`. The field is padded with a lower ring
/// so every outline closes; points on the padding snap to the border.
/// Filling all loops with the even-odd rule yields the region.
pub fn superlevel_loops(values: &[f64], rows: usize, cols: usize, level: f64) -> Vec<Contour> {
    assert_eq!(values.len(), rows * cols, "field size");
    let low = values.iter().copied().fold(f64::INFINITY, f64::min).min(level) - 1.0;
    let (pr, pc) = (rows + 2, cols + 2);
    let mut padded = vec![low; pr * pc];
    for r in 0..rows {
        padded[(r + 1) * pc + 1..(r + 1) * pc + 1 + cols].copy_from_slice(&values[r * cols..(r + 1) * cols]);
    }
    let mut loops = Field {
        values: &padded,
        rows: pr,
        cols: pc,
    }
    .trace(level);
    let (xmax, ymax) = ((cols - 1) as f64, (rows - 1) as f64);
    for l in &mut loops {
        for p in &mut l.points {
            p[0] = (p[0] - 1.0).clamp(0.0, xmax);
            p[1] = (p[1] - 1.0).clamp(0.0, ymax);
        }
    }
    loops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_high_node_gives_diamond() {
        let mut v = vec![0.0; 9];
        v[4] = 1.0;
        let c = iso_lines(&v, 3, 3, 0.5);
        assert_eq!(c.len(), 1);
        assert!(c[0].closed);
        assert_eq!(c[0].points.len(), 4);
    }

    #[test]
    fn border_crossing_stays_open() {
        // Ramp in x: the 0.5 line runs bottom to top.
        let v: Vec<f64> = (0..16).map(|i| (i % 4) as f64 / 3.0).collect();
        let c = iso_lines(&v, 4, 4, 0.5);
        assert_eq!(c.len(), 1);
        assert!(!c[0].closed);
        assert_eq!(c[0].points.len(), 4);
        assert!(c[0].points.iter().all(|p| (p[0] - 1.5).abs() < 1e-12));
    }

    #[test]
    fn superlevel_of_full_grid_is_border() {
        let v = vec![1.0; 16];
        let loops = superlevel_loops(&v, 4, 4, 0.5);
        assert_eq!(loops.len(), 1);
        assert!(loops[0].closed);
        for p in &loops[0].points {
            assert!(p[0] == 0.0 || p[0] == 3.0 || p[1] == 0.0 || p[1] == 3.0);
        }
        assert!(iso_lines(&v, 4, 4, 0.5).is_empty());
    }
}
