//! Power-law tail exponents of return distributions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TAIL_FRACTION: f64 = 0.10;
pub const MIN_SAMPLES: usize = 100;
pub const MIN_TAIL_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    fn orient(self, x: f64) -> f64 {
        match self {
            Side::Positive => x,
            Side::Negative => -x,
        }
    }
}

/// Fitted tail of one side of a distribution, `P(X > x) ~ x^-alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub alpha: f64,
    pub tail_fraction: f64,
    /// Number of samples strictly above `x_min`.
    pub k: usize,
    pub x_min: f64,
    pub side: Side,
}

/// Hill estimate `k / sum ln(x / x_min)` over the given tail values.
pub fn hill_estimate(tail: &[f64], x_min: f64) -> f64 {
    let log_sum: f64 = tail.iter().map(|x| (x / x_min).ln()).sum();
    tail.len() as f64 / log_sum
}

/// Maximum-likelihood (Hill) fit of the tail exponent using the top
/// `ceil(tail_fraction * n)` order statistics, with `x_min` the largest
/// excluded order statistic.
pub fn fit_tail_exponent(samples: &[f64], side: Side, tail_fraction: f64) -> Result<TailFit> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            found: samples.len(),
            required: MIN_SAMPLES,
        });
    }
    if !(tail_fraction > 0.0 && tail_fraction <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "tail fraction {tail_fraction} outside (0, 0.5]"
        )));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("samples must be finite".into()));
    }
    let mut xs: Vec<f64> = samples.iter().map(|&x| side.orient(x)).collect();
    xs.sort_by(|a, b| b.total_cmp(a));

    let n = xs.len();
    let requested = ((tail_fraction * n as f64).ceil() as usize).min(n - 1);
    let x_min = xs[requested];
    if x_min <= 0.0 {
        return Err(Error::NonPositiveTail(x_min));
    }
    // Ties at x_min are not part of the tail.
    let k = xs[..requested].partition_point(|&x| x > x_min);
    if k < MIN_TAIL_POINTS {
        return Err(Error::TooFewTailPoints {
            found: k,
            required: MIN_TAIL_POINTS,
        });
    }
    Ok(TailFit {
        alpha: hill_estimate(&xs[..k], x_min),
        tail_fraction,
        k,
        x_min,
        side,
    })
}

/// Empirical survival function `P(X > x)` on the sorted distinct values,
/// omitting the final zero-probability point.
pub fn tail_survival(samples: &[f64], side: Side) -> Result<Vec<(f64, f64)>> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut xs: Vec<f64> = samples.iter().map(|&x| side.orient(x)).collect();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut out = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let x = xs[i];
        let mut j = i;
        while j < xs.len() && xs[j] == x {
            j += 1;
        }
        let above = xs.len() - j;
        if above > 0 {
            out.push((x, above as f64 / n));
        }
        i = j;
    }
    Ok(out)
}
