use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::AnalyticsError;
use crate::scalar::{dist2, Point2, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterAssignment<T> {
    pub k: usize,
    pub labels: Vec<usize>,
    pub centroids: Vec<Point2<T>>,
    pub inertia: T,
    /// Inertia after every Lloyd iteration; non-increasing.
    pub inertia_history: Vec<T>,
}

impl<T: Real> ClusterAssignment<T> {
    /// Clusters as sorted member lists, ordered by smallest member. Two
    /// assignments describe the same partition iff these are equal.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            groups[l].push(i);
        }
        groups.retain(|g| !g.is_empty());
        groups.sort();
        groups
    }
}

pub(crate) fn inertia<T: Real>(points: &[Point2<T>], labels: &[usize], centroids: &[Point2<T>]) -> T {
    points
        .iter()
        .zip(labels)
        .map(|(p, &l)| dist2(p, &centroids[l]))
        .sum()
}

fn nearest<T: Real>(p: &Point2<T>, centroids: &[Point2<T>]) -> (usize, T) {
    let mut best = (0, dist2(p, &centroids[0]));
    for (c, q) in centroids.iter().enumerate().skip(1) {
        let d = dist2(p, q);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn plus_plus<T: Real>(points: &[Point2<T>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Point2<T>> {
    let n = points.len();
    let mut centroids = vec![points[rng.random_range(0..n)]];
    let mut d2: Vec<f64> = points.iter().map(|p| dist2(p, &centroids[0]).as_f64()).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let u = rng.random::<f64>() * total;
            let mut acc = 0.0;
            d2.iter()
                .position(|&w| {
                    acc += w;
                    acc > u
                })
                .unwrap_or(n - 1)
        } else {
            rng.random_range(0..n)
        };
        let c = points[pick];
        centroids.push(c);
        for (w, p) in d2.iter_mut().zip(points) {
            *w = w.min(dist2(p, &c).as_f64());
        }
    }
    centroids
}

/// Moves the point farthest from its centroid into each empty cluster.
fn repair_empty<T: Real>(points: &[Point2<T>], labels: &mut [usize], centroids: &mut [Point2<T>]) {
    let k = centroids.len();
    loop {
        let mut sizes = vec![0usize; k];
        for &l in labels.iter() {
            sizes[l] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        let mut far: Option<(usize, T)> = None;
        for (i, p) in points.iter().enumerate() {
            if sizes[labels[i]] < 2 {
                continue;
            }
            let d = dist2(p, &centroids[labels[i]]);
            if far.is_none_or(|(_, best)| d > best) {
                far = Some((i, d));
            }
        }
        let (i, _) = far.expect("k ≤ number of points");
        labels[i] = empty;
        centroids[empty] = points[i];
    }
}

fn means<T: Real>(points: &[Point2<T>], labels: &[usize], k: usize) -> Vec<Point2<T>> {
    let mut sums = vec![[T::zero(); 2]; k];
    let mut counts = vec![0usize; k];
    for (p, &l) in points.iter().zip(labels) {
        sums[l][0] += p[0];
        sums[l][1] += p[1];
        counts[l] += 1;
    }
    sums.iter()
        .zip(&counts)
        .map(|(s, &c)| {
            let c = T::from_usize_lossy(c.max(1));
            [s[0] / c, s[1] / c]
        })
        .collect()
}

/// Lloyd iterations from the given initial centroids.
pub(crate) fn lloyd<T: Real>(
    points: &[Point2<T>],
    mut centroids: Vec<Point2<T>>,
    max_iter: usize,
) -> ClusterAssignment<T> {
    let k = centroids.len();
    let mut labels: Vec<usize> = Vec::new();
    let mut history = Vec::new();
    for _ in 0..max_iter {
        let mut next: Vec<usize> = points.iter().map(|p| nearest(p, &centroids).0).collect();
        repair_empty(points, &mut next, &mut centroids);
        centroids = means(points, &next, k);
        history.push(inertia(points, &next, &centroids));
        let stable = next == labels;
        labels = next;
        if stable {
            break;
        }
    }
    ClusterAssignment {
        k,
        inertia: *history.last().expect("max_iter ≥ 1"),
        labels,
        centroids,
        inertia_history: history,
    }
}

/// k-means++ seeding followed by Lloyd iterations until assignments are
/// stable or `max_iter` is reached. Distance ties go to the lower centroid.
pub fn kmeans<T: Real>(
    points: &[Point2<T>],
    k: usize,
    seed: u64,
    max_iter: usize,
) -> Result<ClusterAssignment<T>, AnalyticsError> {
    if k < 1 || k > points.len() {
        return Err(AnalyticsError::InvalidK { k, points: points.len() });
    }
    if max_iter == 0 {
        return Err(AnalyticsError::InvalidArgument("max_iter must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let init = plus_plus(points, k, &mut rng);
    Ok(lloyd(points, init, max_iter))
}

pub const ELBOW_RESTARTS: u64 = 5;
const ELBOW_MAX_ITER: usize = 300;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElbowResult<T> {
    pub k_best: usize,
    /// Best inertia for k = 1..=k_max (index k − 1).
    pub inertias: Vec<T>,
    /// Best assignment for each k, aligned with `inertias`.
    #[serde(skip)]
    pub assignments: Vec<ClusterAssignment<T>>,
    pub warning: Option<String>,
}

impl<T: Real> ElbowResult<T> {
    pub fn best(&self) -> &ClusterAssignment<T> {
        &self.assignments[self.k_best - 1]
    }
}

/// Picks k at the knee of the inertia curve: the k in `2..k_max` whose point
/// `(k, normalized inertia)` lies farthest from the chord between the
/// curve's endpoints. Ties go to the smaller k.
///
/// Each inertia is the best of [`ELBOW_RESTARTS`] seeded k-means++ runs
/// (seed + restart index) plus one warm start from the best k − 1 solution
/// with an extra center at the worst-served point, which keeps the curve
/// non-increasing.
pub fn select_k_elbow<T: Real>(
    points: &[Point2<T>],
    k_max: usize,
    seed: u64,
) -> Result<ElbowResult<T>, AnalyticsError> {
    if k_max < 2 || k_max > points.len() {
        return Err(AnalyticsError::InvalidK {
            k: k_max,
            points: points.len(),
        });
    }
    let mut assignments: Vec<ClusterAssignment<T>> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut best: Option<ClusterAssignment<T>> = None;
        let mut consider = |cand: ClusterAssignment<T>| {
            if best.as_ref().is_none_or(|b| cand.inertia < b.inertia) {
                best = Some(cand);
            }
        };
        for r in 0..ELBOW_RESTARTS {
            consider(kmeans(points, k, seed.wrapping_add(r), ELBOW_MAX_ITER)?);
        }
        if let Some(prev) = assignments.last() {
            let worst = points
                .iter()
                .zip(&prev.labels)
                .enumerate()
                .fold((0, T::neg_infinity()), |acc, (i, (p, &l))| {
                    let d = dist2(p, &prev.centroids[l]);
                    if d > acc.1 {
                        (i, d)
                    } else {
                        acc
                    }
                })
                .0;
            let mut init = prev.centroids.clone();
            init.push(points[worst]);
            consider(lloyd(points, init, ELBOW_MAX_ITER));
        }
        assignments.push(best.expect("at least one candidate"));
    }

    let inertias: Vec<T> = assignments.iter().map(|a| a.inertia).collect();
    let first = inertias[0];
    let last = inertias[k_max - 1];
    let spread = first - last;
    let tol = T::lit(1e-12) * first.abs().max(T::one());
    if spread.abs() <= tol {
        return Ok(ElbowResult {
            k_best: 1,
            inertias,
            assignments,
            warning: Some("inertia curve is flat; all points coincide, using k = 1".into()),
        });
    }
    let span = T::from_usize_lossy(k_max - 1);
    let chord_len = (span * span + T::one()).sqrt();
    let mut k_best = k_max;
    let mut best_dist = T::neg_infinity();
    for k in 2..k_max {
        let y = (inertias[k - 1] - last) / spread;
        let cross = span * (y - T::one()) + T::from_usize_lossy(k - 1);
        let d = cross.abs() / chord_len;
        if d > best_dist {
            best_dist = d;
            k_best = k;
        }
    }
    Ok(ElbowResult {
        k_best,
        inertias,
        assignments,
        warning: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_equals_n_is_exact() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.3, 0.7], [0.9, 0.9]];
        let a = kmeans(&pts, 4, 3, 50).unwrap();
        assert_eq!(a.inertia, 0.0);
        assert_eq!(a.partition().len(), 4);
    }

    #[test]
    fn unit_square_corners() {
        // Brute force over all 2-partitions of the four corners.
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
        let mut oracle = f64::INFINITY;
        for mask in 1u32..15 {
            let mut cost = 0.0;
            for side in [true, false] {
                let members: Vec<_> = (0..4).filter(|&i| ((mask >> i) & 1 == 1) == side).collect();
                let c = [
                    members.iter().map(|&i| pts[i][0]).sum::<f64>() / members.len() as f64,
                    members.iter().map(|&i| pts[i][1]).sum::<f64>() / members.len() as f64,
                ];
                cost += members.iter().map(|&i| dist2(&pts[i], &c)).sum::<f64>();
            }
            oracle = oracle.min(cost);
        }
        // Two side pairs, each contributing 2 × 0.25.
        assert_eq!(oracle, 1.0);
        for seed in 0..20 {
            // A single run may stop in the 3 + 1 local optimum (inertia 4/3).
            let a = kmeans(&pts, 2, seed, 100).unwrap();
            assert!(a.inertia >= oracle - 1e-12);
            let best = &select_k_elbow(&pts, 3, seed).unwrap().assignments[1];
            assert!((best.inertia - oracle).abs() < 1e-12, "seed {seed}: {}", best.inertia);
        }
    }

    #[test]
    fn single_cluster_is_grand_mean() {
        let pts: [[f64; 2]; 3] = [[0.0, 0.0], [2.0, 0.0], [1.0, 3.0]];
        let a = kmeans(&pts, 1, 0, 10).unwrap();
        assert!((a.centroids[0][0] - 1.0).abs() < 1e-15);
        assert!((a.centroids[0][1] - 1.0).abs() < 1e-15);
        let direct: f64 = pts.iter().map(|p| dist2(p, &[1.0, 1.0])).sum();
        assert!((a.inertia - direct).abs() < 1e-12);
    }

    #[test]
    fn invalid_k() {
        let pts = [[0.0, 0.0], [1.0, 1.0]];
        assert!(kmeans(&pts, 0, 0, 10).is_err());
        assert!(kmeans(&pts, 3, 0, 10).is_err());
        assert!(kmeans(&pts, 1, 0, 0).is_err());
        assert!(select_k_elbow(&pts, 1, 0).is_err());
    }

    #[test]
    fn duplicate_points_repair_empty_clusters() {
        let pts = [[0.5, 0.5]; 5];
        let a = kmeans(&pts, 3, 1, 20).unwrap();
        let mut sizes = [0; 3];
        for &l in &a.labels {
            sizes[l] += 1;
        }
        assert!(sizes.iter().all(|&s| s > 0));
        assert_eq!(a.inertia, 0.0);
    }

    #[test]
    fn identical_points_elbow_is_flat() {
        let pts = [[0.2, 0.2]; 6];
        let e = select_k_elbow(&pts, 4, 1).unwrap();
        assert_eq!(e.k_best, 1);
        assert!(e.warning.is_some());
    }
}
