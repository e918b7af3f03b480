use serde::Serialize;

use crate::scalar::{dist, Point2, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiversityReport<T> {
    pub avg_dis: T,
    pub count: usize,
    /// True when fewer than two ideas make the average undefined (reported as 0).
    pub undersized: bool,
}

/// Mean Euclidean distance over all unordered pairs.
pub fn avg_pairwise_distance<T: Real>(points: &[Point2<T>]) -> DiversityReport<T> {
    let n = points.len();
    if n < 2 {
        return DiversityReport {
            avg_dis: T::zero(),
            count: n,
            undersized: true,
        };
    }
    let mut sum = T::zero();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            sum += dist(a, b);
        }
    }
    let pairs = T::from_usize_lossy(n * (n - 1) / 2);
    DiversityReport {
        avg_dis: sum / pairs,
        count: n,
        undersized: false,
    }
}
