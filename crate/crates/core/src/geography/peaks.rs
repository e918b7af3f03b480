use std::cmp::Ordering;

use serde::Serialize;

use super::TerrainGrid;
use crate::scalar::Real;

pub const DEFAULT_MIN_PROMINENCE: f64 = 0.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Peak<T> {
    pub row: usize,
    pub col: usize,
    pub x: T,
    pub y: T,
    pub elevation: T,
    /// Drop from the summit to the highest saddle leading to a higher summit,
    /// or to the terrain floor when no higher summit is reachable.
    pub prominence: T,
    pub support: T,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Summits of the supported part of the terrain, highest first.
///
/// Cells are visited from high to low, growing 8-connected regions with a
/// union-find; a region's first cell is its summit, and when two regions
/// meet the lower summit's prominence is its drop to the meeting cell.
/// Unsupported cells are never visited, so data-free gaps separate regions.
///
/// Equal elevations are ordered by kernel support (denser first), then by
/// row-major index, so a flat plateau resolves to the cell nearest its data
/// rather than to an arbitrary corner.
pub fn find_peaks<T: Real>(grid: &TerrainGrid<T>, min_prominence: T) -> Vec<Peak<T>> {
    let g = grid.resolution;
    let n = g * g;
    let key = |a: usize, b: usize| -> Ordering {
        grid.elevation[b]
            .partial_cmp(&grid.elevation[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| grid.support[b].partial_cmp(&grid.support[a]).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    };
    let mut order: Vec<usize> = (0..n).filter(|&i| grid.is_supported(i)).collect();
    order.sort_by(|&a, &b| key(a, b));

    let floor = grid.elevation.iter().copied().fold(T::infinity(), T::min);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut visited = vec![false; n];
    let mut prominence: Vec<Option<T>> = vec![None; n];
    let mut summits = Vec::new();

    for &c in &order {
        visited[c] = true;
        let (r, col) = (c / g, c % g);
        let mut roots: Vec<usize> = Vec::with_capacity(8);
        for dr in -1i64..=1 {
            for dc in -1i64..=1 {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let (nr, nc) = (r as i64 + dr, col as i64 + dc);
                if nr < 0 || nc < 0 || nr >= g as i64 || nc >= g as i64 {
                    continue;
                }
                let nb = nr as usize * g + nc as usize;
                if visited[nb] {
                    // Roots are always their region's summit.
                let root = find(&mut parent, nb);
                    if !roots.contains(&root) {
                        roots.push(root);
                    }
                }
            }
        }
        if roots.is_empty() {
            summits.push(c);
            continue;
        }
        roots.sort_by(|&a, &b| key(a, b));
        let keep = roots[0];
        for &other in &roots[1..] {
            prominence[other] = Some(grid.elevation[other] - grid.elevation[c]);
            parent[other] = keep;
        }
        parent[c] = keep;
    }

    let mut peaks: Vec<Peak<T>> = summits
        .into_iter()
        .filter_map(|s| {
            let p = prominence[s].unwrap_or(grid.elevation[s] - floor);
            (p >= min_prominence).then(|| {
                let (row, col) = (s / g, s % g);
                let [x, y] = grid.node(row, col);
                Peak {
                    row,
                    col,
                    x,
                    y,
                    elevation: grid.elevation[s],
                    prominence: p,
                    support: grid.support[s],
                }
            })
        })
        .collect();
    peaks.sort_by(|a, b| key(a.row * g + a.col, b.row * g + b.col));
    peaks
}
