use serde::{Deserialize, Serialize};

use super::{ElevationSet, GeographyError};
use crate::dimred::ProjectionSet;
use crate::scalar::{dist, dist2, Point2, Real};

pub const DEFAULT_RESOLUTION: usize = 100;
pub const DEFAULT_BANDWIDTH: f64 = 0.05;
/// Cells whose total kernel mass falls below this carry no data.
pub const SUPPORT_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Utility,
    IdeaLength,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Interpolation {
    /// Gaussian-kernel weighted mean.
    NadarayaWatson,
    /// Weights `1 / d^power`; kernel mass still decides support.
    InverseDistance { power: f64 },
}

/// Elevation over a `G × G` lattice of nodes spanning `[0, 1]²`.
///
/// Node `(row, col)` sits at `(col, row) / (G − 1)`; storage is row-major
/// with row 0 at y = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TerrainGrid<T> {
    pub resolution: usize,
    pub bandwidth: T,
    pub metric: Metric,
    pub interpolation: Interpolation,
    pub elevation: Vec<T>,
    pub support: Vec<T>,
    /// Range of the input elevations; unsupported cells sit at `z_min`.
    pub z_min: T,
    pub z_max: T,
}

impl<T: Real> TerrainGrid<T> {
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.resolution + col
    }

    pub fn cell_size(&self) -> T {
        T::one() / T::from_usize_lossy(self.resolution - 1)
    }

    pub fn node(&self, row: usize, col: usize) -> Point2<T> {
        let s = self.cell_size();
        [T::from_usize_lossy(col) * s, T::from_usize_lossy(row) * s]
    }

    pub fn elevation_at(&self, row: usize, col: usize) -> T {
        self.elevation[self.index(row, col)]
    }

    pub fn is_supported(&self, idx: usize) -> bool {
        self.support[idx] >= T::lit(SUPPORT_EPSILON)
    }

    /// Grid node nearest to `p` as `(row, col)`.
    pub fn nearest_cell(&self, p: Point2<T>) -> (usize, usize) {
        let last = self.resolution - 1;
        let g = T::from_usize_lossy(last);
        let snap = |v: T| {
            let k = (v * g).round().max(T::zero()).to_usize().unwrap_or(0);
            k.min(last)
        };
        (snap(p[1]), snap(p[0]))
    }

    /// Bilinear interpolation of the elevation at `p` (clamped to the square).
    pub fn sample(&self, p: Point2<T>) -> T {
        let last = self.resolution - 1;
        let g = T::from_usize_lossy(last);
        let locate = |v: T| {
            let u = (v.max(T::zero()).min(T::one())) * g;
            let i = u.floor().to_usize().unwrap_or(0).min(last - 1);
            (i, u - T::from_usize_lossy(i))
        };
        let (c, fx) = locate(p[0]);
        let (r, fy) = locate(p[1]);
        let one = T::one();
        self.elevation_at(r, c) * (one - fx) * (one - fy)
            + self.elevation_at(r, c + 1) * fx * (one - fy)
            + self.elevation_at(r + 1, c) * (one - fx) * fy
            + self.elevation_at(r + 1, c + 1) * fx * fy
    }
}

/// Nadaraya–Watson terrain with a Gaussian kernel of bandwidth `h`.
pub fn build_terrain<T: Real>(
    points: &[Point2<T>],
    elevations: &[T],
    resolution: usize,
    h: T,
    metric: Metric,
) -> Result<TerrainGrid<T>, GeographyError> {
    build_terrain_with(points, elevations, resolution, h, metric, Interpolation::NadarayaWatson)
}

pub fn build_terrain_with<T: Real>(
    points: &[Point2<T>],
    elevations: &[T],
    resolution: usize,
    h: T,
    metric: Metric,
    interpolation: Interpolation,
) -> Result<TerrainGrid<T>, GeographyError> {
    if points.len() != elevations.len() {
        return Err(GeographyError::LengthMismatch {
            points: points.len(),
            elevations: elevations.len(),
        });
    }
    if points.is_empty() {
        return Err(GeographyError::EmptyInput);
    }
    if !(h > T::zero()) || !h.is_finite() {
        return Err(GeographyError::InvalidBandwidth(h.as_f64()));
    }
    if resolution < 2 {
        return Err(GeographyError::InvalidResolution(resolution));
    }
    for (i, (p, z)) in points.iter().zip(elevations).enumerate() {
        if !(p[0].is_finite() && p[1].is_finite() && z.is_finite()) {
            return Err(GeographyError::NonFinite(i));
        }
    }
    let z_min = elevations.iter().copied().fold(T::infinity(), T::min);
    let z_max = elevations.iter().copied().fold(T::neg_infinity(), T::max);

    let mut grid = TerrainGrid {
        resolution,
        bandwidth: h,
        metric,
        interpolation,
        elevation: vec![z_min; resolution * resolution],
        support: vec![T::zero(); resolution * resolution],
        z_min,
        z_max,
    };
    let inv_2h2 = T::one() / (T::lit(2.0) * h * h);
    let eps = T::lit(SUPPORT_EPSILON);
    for row in 0..resolution {
        for col in 0..resolution {
            let c = grid.node(row, col);
            let idx = grid.index(row, col);
            let mut mass = T::zero();
            let mut acc = T::zero();
            for (p, &z) in points.iter().zip(elevations) {
                let w = (-dist2(&c, p) * inv_2h2).exp();
                mass += w;
                acc += w * (z - z_min);
            }
            grid.support[idx] = mass;
            if mass < eps {
                continue;
            }
            grid.elevation[idx] = match interpolation {
                Interpolation::NadarayaWatson => z_min + acc / mass,
                Interpolation::InverseDistance { power } => inverse_distance(&c, points, elevations, z_min, T::lit(power)),
            };
        }
    }
    Ok(grid)
}

fn inverse_distance<T: Real>(c: &Point2<T>, points: &[Point2<T>], z: &[T], z_min: T, power: T) -> T {
    let (mut hits, mut hit_sum) = (0usize, T::zero());
    let (mut wsum, mut acc) = (T::zero(), T::zero());
    for (p, &zi) in points.iter().zip(z) {
        let d = dist(c, p);
        if d == T::zero() {
            hits += 1;
            hit_sum += zi;
        } else {
            let w = d.powf(-power);
            wsum += w;
            acc += w * (zi - z_min);
        }
    }
    if hits > 0 {
        hit_sum / T::from_usize_lossy(hits)
    } else {
        z_min + acc / wsum
    }
}

/// Terrain over the projected positions of the ideas in `set`.
pub fn terrain_from_elevations<T: Real>(
    set: &ElevationSet<T>,
    projections: &ProjectionSet<T>,
    resolution: usize,
    h: T,
    metric: Metric,
    interpolation: Interpolation,
) -> Result<TerrainGrid<T>, GeographyError> {
    let points = set
        .ids
        .iter()
        .map(|id| {
            projections
                .get(id)
                .map(|p| p.position())
                .ok_or_else(|| GeographyError::MissingProjection(id.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    build_terrain_with(&points, &set.values, resolution, h, metric, interpolation)
}
