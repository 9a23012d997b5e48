mod common;

use approx::assert_abs_diff_eq;
use common::{characteristic_polynomial, polynomial_roots, random_correlation};
use corrnet::spectral::{eigendecompose, CorrelationMatrix};
use ndarray::{array, Array2};

#[test]
fn oracle_finds_known_roots() {
    // (x - 3)(x - 1)(x + 2) = x^3 - 2x^2 - 5x + 6
    let roots = polynomial_roots(&[1.0, -2.0, -5.0, 6.0]);
    for (r, e) in roots.iter().zip([3.0, 1.0, -2.0]) {
        assert_abs_diff_eq!(*r, e, epsilon = 1e-12);
    }
    let a = array![[2.0, 1.0], [1.0, 2.0]];
    assert_eq!(characteristic_polynomial(&a), vec![1.0, -4.0, 3.0]);
}

#[test]
fn eigenvalues_match_characteristic_roots() {
    for n in 2..=6 {
        for seed in 0..20 {
            let c = random_correlation(n, n + 2 + (seed as usize % 5), 1000 * n as u64 + seed);
            let sd = eigendecompose(&CorrelationMatrix::new(c.clone()).unwrap()).unwrap();
            let roots = polynomial_roots(&characteristic_polynomial(&c));
            for (l, r) in sd.eigenvalues().iter().zip(&roots) {
                assert_abs_diff_eq!(*l, *r, epsilon = 1e-8);
            }
        }
    }
}

#[test]
fn two_by_two_analytic() {
    for c in [-0.9, -0.3, 0.0, 0.45, 0.99] {
        let sd =
            eigendecompose(&CorrelationMatrix::new(array![[1.0, c], [c, 1.0]]).unwrap()).unwrap();
        let mut expected = [1.0 + c, 1.0 - c];
        expected.sort_by(|a, b| b.total_cmp(a));
        assert_abs_diff_eq!(sd.eigenvalues()[0], expected[0], epsilon = 1e-12);
        assert_abs_diff_eq!(sd.eigenvalues()[1], expected[1], epsilon = 1e-12);
    }
}

#[test]
fn identity_is_fully_degenerate() {
    let sd = eigendecompose(&CorrelationMatrix::new(Array2::eye(5)).unwrap()).unwrap();
    assert!(sd.eigenvalues().iter().all(|&l| (l - 1.0).abs() < 1e-12));
    for j in 0..5 {
        let s: f64 = sd.eigenvector(j).iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(s, 5.0, epsilon = 1e-9);
    }
    for (a, b) in sd.reconstruct().iter().zip(Array2::<f64>::eye(5).iter()) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }
}

#[test]
fn normalization_sign_and_reconstruction() {
    for seed in 0..30 {
        let n = 3 + seed as usize % 10;
        let c = random_correlation(n, 3 * n, seed);
        let sd = eigendecompose(&CorrelationMatrix::new(c.clone()).unwrap()).unwrap();
        assert_abs_diff_eq!(
            sd.eigenvalues().iter().sum::<f64>(),
            n as f64,
            epsilon = 1e-8
        );
        assert!(sd.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
        for j in 0..n {
            let u = sd.eigenvector(j);
            assert_abs_diff_eq!(
                u.iter().map(|x| x * x).sum::<f64>(),
                n as f64,
                epsilon = 1e-9
            );
            let big = u.iter().copied().fold(0.0_f64, |m, x| m.max(x.abs()));
            let first = u.iter().position(|x| x.abs() == big).unwrap();
            assert!(u[first] > 0.0);
            // C u = lambda u
            let cu = c.dot(&u);
            for (a, b) in cu.iter().zip(u.iter()) {
                assert_abs_diff_eq!(*a, sd.eigenvalues()[j] * b, epsilon = 1e-8);
            }
        }
        for (a, b) in sd.reconstruct().iter().zip(c.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }
}

#[test]
fn eigenvectors_are_orthogonal() {
    let c = random_correlation(8, 20, 77);
    let sd = eigendecompose(&CorrelationMatrix::new(c).unwrap()).unwrap();
    let u = sd.eigenvectors();
    let g = u.dot(&u.t());
    for ((i, j), x) in g.indexed_iter() {
        let expected = if i == j { 8.0 } else { 0.0 };
        assert_abs_diff_eq!(*x, expected, epsilon = 1e-9);
    }
}

#[test]
fn repeated_runs_are_bitwise_identical() {
    let c = CorrelationMatrix::new(random_correlation(12, 30, 5)).unwrap();
    let a = eigendecompose(&c).unwrap();
    let b = eigendecompose(&c).unwrap();
    assert_eq!(a, b);
    assert!(a.eigenvalues().iter().all(|&l| l >= -1e-10));
}
