//! Small descriptive-statistics helpers shared by the analysis stages.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

/// Fixed-width density histogram. Densities integrate to one:
/// `sum(density) * bin_width == 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    /// `(bin_center, density)` pairs with strictly increasing centers.
    pub bins: Vec<(f64, f64)>,
}

impl Histogram {
    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// `sum(density) * bin_width`; 1 for any non-empty histogram.
    pub fn total_mass(&self) -> f64 {
        self.bins.iter().map(|(_, d)| d).sum::<f64>() * self.bin_width
    }
}

/// Density histogram over `[min, max]` of `values` with `bins` equal bins.
///
/// Empty input gives an empty histogram. When every value is identical the
/// result is a single unit-width bin centred on that value.
pub fn histogram(values: &[f64], bins: usize) -> Histogram {
    let bins = bins.max(1);
    if values.is_empty() {
        return Histogram {
            bin_width: 0.0,
            bins: Vec::new(),
        };
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return Histogram {
            bin_width: 1.0,
            bins: vec![(lo, 1.0)],
        };
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in values {
        let b = (((x - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let norm = values.len() as f64 * width;
    Histogram {
        bin_width: width,
        bins: counts
            .iter()
            .enumerate()
            .map(|(b, &c)| (lo + (b as f64 + 0.5) * width, c as f64 / norm))
            .collect(),
    }
}

/// Population mean and standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
}

/// One-sample Kolmogorov-Smirnov statistic `sup |F_n(x) - F(x)|`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// KS statistic against the standard normal distribution.
pub fn ks_statistic_normal(samples: &[f64]) -> f64 {
    ks_statistic(samples, standard_normal_cdf)
}
