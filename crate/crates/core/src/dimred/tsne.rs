//! Exact t-SNE to two dimensions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{pca::check_matrix, DimredError};
use crate::scalar::{Point2, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TsneConfig {
    pub perplexity: f64,
    pub iterations: usize,
    pub learning_rate: f64,
    pub early_exaggeration: f64,
    /// Iterations run with exaggerated affinities and the initial momentum.
    pub exaggeration_iterations: usize,
    pub initial_momentum: f64,
    pub final_momentum: f64,
}

impl Default for TsneConfig {
    fn default() -> Self {
        Self {
            perplexity: 30.0,
            iterations: 1000,
            learning_rate: 200.0,
            early_exaggeration: 12.0,
            exaggeration_iterations: 250,
            initial_momentum: 0.5,
            final_momentum: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsneResult<T> {
    pub points: Vec<Point2<T>>,
    /// KL(P‖Q) after each iteration, measured against the unexaggerated P.
    pub kl_history: Vec<T>,
}

const ENTROPY_TOLERANCE: f64 = 1e-5;
const MAX_BISECTIONS: usize = 50;

fn squared_distances<T: Real>(vectors: &[Vec<T>]) -> Vec<T> {
    let n = vectors.len();
    let mut d = vec![T::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let s: T = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            d[i * n + j] = s;
            d[j * n + i] = s;
        }
    }
    d
}

/// Symmetric joint affinities `P` (row-major `N × N`, zero diagonal, sums
/// to one). Each row's Gaussian precision is bisected until the conditional
/// entropy matches `ln(perplexity)`.
pub fn input_affinities<T: Real>(vectors: &[Vec<T>], perplexity: f64) -> Vec<T> {
    let n = vectors.len();
    let dist = squared_distances(vectors);
    let target = T::lit(perplexity.ln());
    let tol = T::lit(ENTROPY_TOLERANCE);
    let mut cond = vec![T::zero(); n * n];
    let mut row = vec![T::zero(); n];
    for i in 0..n {
        let di = &dist[i * n..(i + 1) * n];
        // Shift by the nearest distance so exp() cannot underflow everywhere.
        let shift = (0..n)
            .filter(|&j| j != i)
            .map(|j| di[j])
            .fold(T::infinity(), T::min);
        let mut beta = T::one();
        let mut lo = T::neg_infinity();
        let mut hi = T::infinity();
        for _ in 0..MAX_BISECTIONS {
            let mut sum = T::zero();
            let mut weighted = T::zero();
            for j in 0..n {
                row[j] = if j == i {
                    T::zero()
                } else {
                    (-(di[j] - shift) * beta).exp()
                };
                sum += row[j];
                weighted += (di[j] - shift) * row[j];
            }
            let entropy = sum.ln() + beta * weighted / sum;
            let diff = entropy - target;
            if diff.abs() < tol {
                break;
            }
            if diff > T::zero() {
                lo = beta;
                beta = if hi.is_infinite() { beta * T::lit(2.0) } else { (beta + hi) / T::lit(2.0) };
            } else {
                hi = beta;
                beta = if lo.is_infinite() { beta / T::lit(2.0) } else { (beta + lo) / T::lit(2.0) };
            }
        }
        let sum: T = row.iter().copied().sum();
        for j in 0..n {
            cond[i * n + j] = row[j] / sum;
        }
    }
    let scale = T::one() / T::from_usize_lossy(2 * n);
    let mut p = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            p[i * n + j] = (cond[i * n + j] + cond[j * n + i]) * scale;
        }
    }
    p
}

/// Student-t kernel numerators `1 / (1 + ‖y_i − y_j‖²)` and their sum.
fn student_t<T: Real>(y: &[Point2<T>]) -> (Vec<T>, T) {
    let n = y.len();
    let mut num = vec![T::zero(); n * n];
    let mut sum = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            let dx = y[i][0] - y[j][0];
            let dy = y[i][1] - y[j][1];
            let q = T::one() / (T::one() + dx * dx + dy * dy);
            num[i * n + j] = q;
            num[j * n + i] = q;
            sum += q + q;
        }
    }
    (num, sum)
}

/// `KL(P ‖ Q)` for embedding `y`; terms with `p = 0` contribute nothing.
pub fn kl_divergence<T: Real>(p: &[T], y: &[Point2<T>]) -> T {
    let n = y.len();
    let (num, sum) = student_t(y);
    let mut kl = T::zero();
    for i in 0..n {
        for j in 0..n {
            let pij = p[i * n + j];
            if i != j && pij > T::zero() {
                kl += pij * (pij / (num[i * n + j] / sum)).ln();
            }
        }
    }
    kl
}

/// `∂KL/∂y_i = 4 Σ_j (p_ij − q_ij)(y_i − y_j) / (1 + ‖y_i − y_j‖²)`.
pub fn kl_gradient<T: Real>(p: &[T], y: &[Point2<T>]) -> Vec<Point2<T>> {
    let n = y.len();
    let (num, sum) = student_t(y);
    let four = T::lit(4.0);
    (0..n)
        .map(|i| {
            let mut g = [T::zero(); 2];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let w = (p[i * n + j] - num[i * n + j] / sum) * num[i * n + j];
                g[0] += w * (y[i][0] - y[j][0]);
                g[1] += w * (y[i][1] - y[j][1]);
            }
            [g[0] * four, g[1] * four]
        })
        .collect()
}

pub fn fit_tsne<T: Real>(
    vectors: &[Vec<T>],
    config: &TsneConfig,
    seed: u64,
) -> Result<TsneResult<T>, DimredError> {
    let n = vectors.len();
    if n < 4 {
        return Err(DimredError::TooFewPoints { needed: 4, got: n });
    }
    check_matrix(vectors)?;
    if !(config.perplexity >= 1.0 && config.perplexity < n as f64) {
        return Err(DimredError::Perplexity {
            perplexity: config.perplexity,
            points: n,
        });
    }
    if config.iterations == 0 {
        return Err(DimredError::InvalidArgument("iterations must be ≥ 1".into()));
    }

    let p = input_affinities(vectors, config.perplexity);
    let exaggerated: Vec<T> = p.iter().map(|&x| x * T::lit(config.early_exaggeration)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y: Vec<Point2<T>> = (0..n)
        .map(|_| {
            let a: f64 = StandardNormal.sample(&mut rng);
            let b: f64 = StandardNormal.sample(&mut rng);
            [T::lit(1e-4 * a), T::lit(1e-4 * b)]
        })
        .collect();
    let mut velocity = vec![[T::zero(); 2]; n];
    let mut gains = vec![[T::one(); 2]; n];
    let lr = T::lit(config.learning_rate);
    let min_gain = T::lit(0.01);
    let mut kl_history = Vec::with_capacity(config.iterations);

    for iter in 0..config.iterations {
        let early = iter < config.exaggeration_iterations;
        let momentum = T::lit(if early { config.initial_momentum } else { config.final_momentum });
        let grad = kl_gradient(if early { &exaggerated } else { &p }, &y);
        for i in 0..n {
            for k in 0..2 {
                let same_sign = (grad[i][k] > T::zero()) == (velocity[i][k] > T::zero());
                gains[i][k] = if same_sign {
                    (gains[i][k] * T::lit(0.8)).max(min_gain)
                } else {
                    gains[i][k] + T::lit(0.2)
                };
                velocity[i][k] = momentum * velocity[i][k] - lr * gains[i][k] * grad[i][k];
                y[i][k] += velocity[i][k];
            }
        }
        let inv = T::one() / T::from_usize_lossy(n);
        let mean = y.iter().fold([T::zero(); 2], |m, p| [m[0] + p[0] * inv, m[1] + p[1] * inv]);
        for pt in &mut y {
            pt[0] -= mean[0];
            pt[1] -= mean[1];
        }
        let kl = kl_divergence(&p, &y);
        if !kl.is_finite() {
            return Err(DimredError::NonFiniteKl { iteration: iter });
        }
        kl_history.push(kl);
    }
    Ok(TsneResult {
        points: y,
        kl_history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_points() -> Vec<Vec<f64>> {
        (0..8).map(|i| vec![i as f64, (i * i % 5) as f64, 1.0]).collect()
    }

    #[test]
    fn affinities_are_a_symmetric_distribution() {
        let p = input_affinities(&grid_points(), 3.0);
        let n = 8;
        let total: f64 = p.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        for i in 0..n {
            assert_eq!(p[i * n + i], 0.0);
            for j in 0..n {
                assert_eq!(p[i * n + j], p[j * n + i]);
            }
        }
    }

    #[test]
    fn bisection_hits_perplexity() {
        // Recover each row's conditional distribution from a one-row problem:
        // with perplexity k on k+1 equidistant points, the row must be uniform.
        let simplex: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let p = input_affinities(&simplex, 4.0);
        for j in 1..5 {
            assert!((p[j] - 1.0 / 20.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let pts = grid_points();
        let mut cfg = TsneConfig {
            perplexity: 8.0,
            ..TsneConfig::default()
        };
        assert!(matches!(fit_tsne(&pts, &cfg, 1), Err(DimredError::Perplexity { .. })));
        cfg.perplexity = 0.5;
        assert!(fit_tsne(&pts, &cfg, 1).is_err());
        assert!(fit_tsne(&pts[..3], &TsneConfig::default(), 1).is_err());
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = TsneConfig {
            perplexity: 3.0,
            iterations: 50,
            ..TsneConfig::default()
        };
        let a = fit_tsne(&grid_points(), &cfg, 4).unwrap();
        let b = fit_tsne(&grid_points(), &cfg, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.kl_history.len(), 50);
    }
}
