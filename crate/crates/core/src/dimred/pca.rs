use serde::{Deserialize, Serialize};

use super::{eigen::symmetric_eigen, DimredError};
use crate::scalar::{dot, Point2, Real};

/// Two-component principal axes fitted to a set of vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct PcaModel<T> {
    pub mean: Vec<T>,
    /// Two orthonormal rows; row 0 is PC1.
    pub components: Vec<Vec<T>>,
    /// Full covariance spectrum, descending.
    pub eigenvalues: Vec<T>,
    /// Share of total variance per eigenvalue, aligned with `eigenvalues`.
    pub ratios: Vec<T>,
}

impl<T: Real> PcaModel<T> {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Variance share of PC1 and PC2.
    pub fn explained_variance_ratio(&self) -> [T; 2] {
        [self.ratios[0], self.ratios[1]]
    }

    pub fn reconstruct(&self, coords: Point2<T>) -> Vec<T> {
        self.mean
            .iter()
            .enumerate()
            .map(|(i, &m)| m + coords[0] * self.components[0][i] + coords[1] * self.components[1][i])
            .collect()
    }
}

pub(crate) fn check_matrix<T: Real>(vectors: &[Vec<T>]) -> Result<usize, DimredError> {
    let dim = vectors.first().map_or(0, Vec::len);
    for (row, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(DimredError::DimensionMismatch {
                expected: dim,
                got: v.len(),
                row,
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(DimredError::NonFinite { row });
        }
    }
    Ok(dim)
}

/// Fits PCA through the eigendecomposition of the sample covariance
/// (divisor `D − 1`).
///
/// Each component is sign-fixed so that its entry of largest magnitude is
/// positive (first such entry on ties).
pub fn fit_pca<T: Real>(vectors: &[Vec<T>]) -> Result<PcaModel<T>, DimredError> {
    if vectors.len() < 2 {
        return Err(DimredError::TooFewPoints {
            needed: 2,
            got: vectors.len(),
        });
    }
    let dim = check_matrix(vectors)?;
    if dim < 2 {
        return Err(DimredError::DimensionTooSmall(dim));
    }
    let n = T::from_usize_lossy(vectors.len());
    let mut mean = vec![T::zero(); dim];
    for v in vectors {
        for (m, &x) in mean.iter_mut().zip(v) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);

    let mut cov = vec![T::zero(); dim * dim];
    let mut centered = vec![T::zero(); dim];
    for v in vectors {
        for ((c, &x), &m) in centered.iter_mut().zip(v).zip(&mean) {
            *c = x - m;
        }
        for i in 0..dim {
            let ci = centered[i];
            if ci == T::zero() {
                continue;
            }
            let row = &mut cov[i * dim..(i + 1) * dim];
            for j in i..dim {
                row[j] += ci * centered[j];
            }
        }
    }
    let denom = n - T::one();
    for i in 0..dim {
        for j in i..dim {
            let c = cov[i * dim + j] / denom;
            cov[i * dim + j] = c;
            cov[j * dim + i] = c;
        }
    }
    let total: T = (0..dim).map(|i| cov[i * dim + i]).sum();
    if total <= T::zero() {
        return Err(DimredError::ZeroVariance);
    }

    let eig = symmetric_eigen(&cov, dim)?;
    let ratio_total: T = eig.values.iter().copied().sum();
    let ratios = eig.values.iter().map(|&l| l / ratio_total).collect();
    let components = eig
        .vectors
        .into_iter()
        .take(2)
        .map(fix_sign)
        .collect();
    Ok(PcaModel {
        mean,
        components,
        eigenvalues: eig.values,
        ratios,
    })
}

fn fix_sign<T: Real>(mut v: Vec<T>) -> Vec<T> {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < T::zero() {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Raw PC1/PC2 coordinates `components · (v − mean)`.
pub fn project<T: Real>(model: &PcaModel<T>, vectors: &[Vec<T>]) -> Result<Vec<Point2<T>>, DimredError> {
    let mut centered = vec![T::zero(); model.dim()];
    vectors
        .iter()
        .enumerate()
        .map(|(row, v)| {
            if v.len() != model.dim() {
                return Err(DimredError::DimensionMismatch {
                    expected: model.dim(),
                    got: v.len(),
                    row,
                });
            }
            for ((c, &x), &m) in centered.iter_mut().zip(v).zip(&model.mean) {
                *c = x - m;
            }
            Ok([
                dot(&model.components[0], &centered),
                dot(&model.components[1], &centered),
            ])
        })
        .collect()
}

/// Explained-variance summary with a low-coverage warning.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceReport<T> {
    pub ratios: Vec<T>,
    pub cumulative: Vec<T>,
    pub two_component: T,
    pub floor: T,
    pub warning: Option<String>,
}

pub fn explained_variance_report<T: Real>(model: &PcaModel<T>, floor: T) -> VarianceReport<T> {
    let mut acc = T::zero();
    let cumulative: Vec<T> = model
        .ratios
        .iter()
        .map(|&r| {
            acc += r;
            acc
        })
        .collect();
    let two_component = cumulative.get(1).copied().unwrap_or(acc);
    let warning = (two_component < floor).then(|| {
        format!(
            "PC1 and PC2 capture only {:.2}% of the variance (floor {:.2}%); the 2-D views may misrepresent idea distances",
            two_component.as_f64() * 100.0,
            floor.as_f64() * 100.0
        )
    });
    VarianceReport {
        ratios: model.ratios.clone(),
        cumulative,
        two_component,
        floor,
        warning,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_data() -> Vec<Vec<f64>> {
        vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]
    }

    #[test]
    fn rank_one_line() {
        let m = fit_pca(&line_data()).unwrap();
        let [r1, r2] = m.explained_variance_ratio();
        assert!((r1 - 1.0).abs() < 1e-12 && r2.abs() < 1e-12);
        let s = 1.0 / 2f64.sqrt();
        assert!((m.components[0][0] - s).abs() < 1e-12);
        assert!((m.components[0][1] - s).abs() < 1e-12);
        for p in project(&m, &line_data()).unwrap() {
            assert!(p[1].abs() < 1e-12);
        }
        let report = explained_variance_report(&m, 0.5);
        assert!((report.cumulative[0] - 1.0).abs() < 1e-12);
        assert!((report.cumulative[1] - 1.0).abs() < 1e-12);
        assert!(report.warning.is_none());
    }

    #[test]
    fn mean_projects_to_origin() {
        let m = fit_pca(&line_data()).unwrap();
        let p = project(&m, &[m.mean.clone()]).unwrap()[0];
        assert_eq!(p, [0.0, 0.0]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            fit_pca(&[vec![1.0, 2.0], vec![1.0, 2.0]]),
            Err(DimredError::ZeroVariance)
        ));
        assert!(matches!(
            fit_pca(&[vec![1.0, 2.0]]),
            Err(DimredError::TooFewPoints { .. })
        ));
        assert!(fit_pca(&[vec![1.0, 2.0], vec![1.0]]).is_err());
        let m = fit_pca(&line_data()).unwrap();
        assert!(project(&m, &[vec![1.0, 2.0, 3.0]]).is_err());
    }

    #[test]
    fn sign_convention() {
        assert_eq!(fix_sign(vec![0.1, -0.9, 0.3]), vec![-0.1, 0.9, -0.3]);
        assert_eq!(fix_sign(vec![-0.5, 0.5]), vec![0.5, -0.5]);
    }

    #[test]
    fn low_coverage_warns() {
        let m: PcaModel<f64> = PcaModel {
            mean: vec![0.0; 4],
            components: vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]],
            eigenvalues: vec![1.0; 4],
            ratios: vec![0.25; 4],
        };
        let r = explained_variance_report(&m, 0.5);
        assert!((r.two_component - 0.5).abs() < 1e-15);
        assert!(r.warning.is_none());
        assert!(explained_variance_report(&m, 0.6).warning.is_some());
    }
}
