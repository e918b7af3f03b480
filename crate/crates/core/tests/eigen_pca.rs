mod oracles;

use std::time::Instant;

use ideascope_core::dimred::{explained_variance_report, fit_pca, project, symmetric_eigen};
use oracles::{covariance, jacobi_eigen, random_matrix, sign_fix};
use proptest::prelude::*;

#[test]
fn pca_matches_jacobi_on_twenty_random_matrices() {
    let start = Instant::now();
    for seed in 0..20 {
        let x = random_matrix(50, 10, seed);
        let model = fit_pca(&x).unwrap();
        let (values, vectors) = jacobi_eigen(&covariance(&x), 10);
        for k in 0..2 {
            assert!(
                (model.eigenvalues[k] - values[k]).abs() <= 1e-8,
                "seed {seed} eigenvalue {k}: {} vs {}",
                model.eigenvalues[k],
                values[k]
            );
            let oracle = sign_fix(vectors[k].clone());
            for (a, b) in model.components[k].iter().zip(&oracle) {
                assert!((a - b).abs() <= 1e-8, "seed {seed} component {k}");
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn eigen_full_spectrum_matches_jacobi() {
    let x = random_matrix(30, 7, 99);
    let c = covariance(&x);
    let eig = symmetric_eigen(&c, 7).unwrap();
    let (values, _) = jacobi_eigen(&c, 7);
    for (a, b) in eig.values.iter().zip(&values) {
        assert!((a - b).abs() <= 1e-10);
    }
}

#[test]
fn rank_two_data_reports_full_coverage() {
    let basis = random_matrix(2, 6, 3);
    let coeffs = random_matrix(40, 2, 4);
    let x: Vec<Vec<f64>> = coeffs
        .iter()
        .map(|c| (0..6).map(|j| c[0] * basis[0][j] + c[1] * basis[1][j]).collect())
        .collect();
    let report = explained_variance_report(&fit_pca(&x).unwrap(), 0.5);
    assert!((report.two_component - 1.0).abs() <= 1e-9);
    assert!(report.warning.is_none());
}

#[test]
fn projection_reconstructs_rank_two_data() {
    let basis = random_matrix(2, 5, 8);
    let coeffs = random_matrix(20, 2, 9);
    let x: Vec<Vec<f64>> = coeffs
        .iter()
        .map(|c| (0..5).map(|j| 1.0 + c[0] * basis[0][j] + c[1] * basis[1][j]).collect())
        .collect();
    let model = fit_pca(&x).unwrap();
    for (row, p) in x.iter().zip(project(&model, &x).unwrap()) {
        for (a, b) in row.iter().zip(model.reconstruct(p)) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn variance_ratios_are_a_sub_distribution(seed in 0u64..10_000, rows in 3usize..30, cols in 2usize..8) {
        let x = random_matrix(rows, cols, seed);
        let model = fit_pca(&x).unwrap();
        let report = explained_variance_report(&model, 0.5);
        for w in report.ratios.windows(2) {
            prop_assert!(w[0] >= w[1] - 1e-12);
        }
        prop_assert!(report.cumulative.iter().all(|&c| c <= 1.0 + 1e-9));
        let [r1, r2] = model.explained_variance_ratio();
        prop_assert!(r1 >= r2);
    }

    #[test]
    fn components_are_orthonormal_and_sign_fixed(seed in 0u64..10_000) {
        let x = random_matrix(25, 6, seed);
        let model = fit_pca(&x).unwrap();
        let c = &model.components;
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        prop_assert!((dot(&c[0], &c[0]) - 1.0).abs() < 1e-10);
        prop_assert!((dot(&c[1], &c[1]) - 1.0).abs() < 1e-10);
        prop_assert!(dot(&c[0], &c[1]).abs() < 1e-10);
        for v in c {
            prop_assert_eq!(&sign_fix(v.clone()), v);
        }
    }
}
