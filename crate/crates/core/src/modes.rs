//! Split of a correlation matrix into global, group and random parts.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::spectral::{RmtBounds, SpectralDecomposition};
use crate::stats::{histogram, Histogram};

pub const DEFAULT_NG: usize = 6;

/// `C = C_global + C_group + C_random`, where the global part is the leading
/// mode, the group part the next `n_g` modes and the random part the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeDecomposition {
    pub n_g: usize,
    pub c_global: Array2<f64>,
    pub c_group: Array2<f64>,
    pub c_random: Array2<f64>,
}

impl ModeDecomposition {
    pub fn sum(&self) -> Array2<f64> {
        &self.c_global + &self.c_group + &self.c_random
    }
}

pub fn decompose_modes(sd: &SpectralDecomposition, n_g: usize) -> Result<ModeDecomposition> {
    let n = sd.size();
    if n == 0 || n_g > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "n_g = {n_g} outside 0..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(ModeDecomposition {
        n_g,
        c_global: sd.partial_sum(0..1),
        c_group: sd.partial_sum(1..=n_g),
        c_random: sd.partial_sum(n_g + 1..n),
    })
}

/// Number of eigenvalues other than the largest that lie strictly above the
/// random-matrix upper bound.
pub fn select_ng(sd: &SpectralDecomposition, bounds: &RmtBounds) -> usize {
    sd.eigenvalues()
        .iter()
        .skip(1)
        .filter(|&&l| l > bounds.lambda_max)
        .count()
}

/// Off-diagonal upper-triangle entries in row-major order.
pub fn upper_triangle(m: &Array2<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[[i, j]]);
        }
    }
    out
}

/// Density histogram of the off-diagonal elements of a symmetric matrix.
pub fn element_histogram(m: &Array2<f64>, bins: usize) -> Result<Histogram> {
    if bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "bins = {bins} must be at least 2"
        )));
    }
    Ok(histogram(&upper_triangle(m), bins))
}

pub fn frobenius_norm(m: &Array2<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eigendecompose, CorrelationMatrix};
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn sample() -> SpectralDecomposition {
        let c = CorrelationMatrix::new(array![
            [1.0, 0.5, 0.4, 0.1],
            [0.5, 1.0, 0.3, 0.2],
            [0.4, 0.3, 1.0, -0.1],
            [0.1, 0.2, -0.1, 1.0]
        ])
        .unwrap();
        eigendecompose(&c).unwrap()
    }

    #[test]
    fn extreme_ng() {
        let sd = sample();
        let d = decompose_modes(&sd, 0).unwrap();
        assert!(d.c_group.iter().all(|&x| x == 0.0));
        let d = decompose_modes(&sd, 3).unwrap();
        assert!(d.c_random.iter().all(|&x| x.abs() < 1e-8));
        assert!(decompose_modes(&sd, 4).is_err());
    }

    #[test]
    fn parts_are_symmetric_and_sum_to_c() {
        let sd = sample();
        let c = sd.reconstruct();
        for n_g in 0..4 {
            let d = decompose_modes(&sd, n_g).unwrap();
            for m in [&d.c_global, &d.c_group, &d.c_random] {
                for ((i, j), x) in m.indexed_iter() {
                    assert_abs_diff_eq!(*x, m[[j, i]], epsilon = 1e-15);
                }
            }
            for (a, b) in d.sum().iter().zip(c.iter()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    fn spectrum_of(values: &[f64]) -> SpectralDecomposition {
        let n = values.len();
        let vectors = Array2::<f64>::eye(n) * (n as f64).sqrt();
        SpectralDecomposition::from_parts(values.to_vec(), vectors).unwrap()
    }

    #[test]
    fn counts_modes_above_upper_bound() {
        let bounds = RmtBounds {
            q: 81.54,
            lambda_min: 0.79,
            lambda_max: 1.23,
        };
        let sd = spectrum_of(&[12.0, 3.0, 2.0, 1.5, 1.1, 0.9, 0.8]);
        assert_eq!(select_ng(&sd, &bounds), 3);
        let sd = spectrum_of(&[12.0, 1.2, 1.0, 0.8]);
        assert_eq!(select_ng(&sd, &bounds), 0);
    }

    #[test]
    fn histogram_cases() {
        let zeros = Array2::<f64>::zeros((4, 4));
        let h = element_histogram(&zeros, 10).unwrap();
        assert_eq!(h.bins, vec![(0.0, 1.0)]);

        let a = 0.3;
        let m = array![
            [1.0, a, -a, a],
            [a, 1.0, a, -a],
            [-a, a, 1.0, -a],
            [a, -a, -a, 1.0]
        ];
        let h = element_histogram(&m, 4).unwrap();
        assert_abs_diff_eq!(h.total_mass(), 1.0, epsilon = 1e-12);
        let occupied: Vec<_> = h.bins.iter().filter(|b| b.1 > 0.0).collect();
        assert_eq!(occupied.len(), 2);
        assert_abs_diff_eq!(occupied[0].0, -occupied[1].0, epsilon = 1e-12);
        assert_abs_diff_eq!(occupied[0].1, occupied[1].1, epsilon = 1e-12);
        assert!(element_histogram(&m, 1).is_err());
    }
}
