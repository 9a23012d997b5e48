//! Random-matrix reference distributions for uncorrelated series.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Support of the Marchenko-Pastur spectrum for `q = T / N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RmtBounds {
    pub q: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

impl RmtBounds {
    pub fn from_q(q: f64) -> Result<Self> {
        if !q.is_finite() || q < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "q = {q} must be at least 1"
            )));
        }
        let r = 1.0 / q.sqrt();
        Ok(Self {
            q,
            lambda_min: (1.0 - r) * (1.0 - r),
            lambda_max: (1.0 + r) * (1.0 + r),
        })
    }

    pub fn contains(&self, lambda: f64) -> bool {
        lambda >= self.lambda_min && lambda <= self.lambda_max
    }
}

/// Bounds for `n` series of length `t`.
pub fn rmt_bounds(n: usize, t: usize) -> Result<RmtBounds> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} must be at least 2"
        )));
    }
    if t < n {
        return Err(Error::InvalidParameter(format!(
            "t = {t} < n = {n} gives q < 1"
        )));
    }
    RmtBounds::from_q(t as f64 / n as f64)
}

/// Marchenko-Pastur eigenvalue density; zero outside the open support.
pub fn mp_density(lambda: f64, q: f64) -> f64 {
    let Ok(b) = RmtBounds::from_q(q) else {
        return 0.0;
    };
    if lambda <= b.lambda_min || lambda >= b.lambda_max {
        return 0.0;
    }
    q / (2.0 * PI) * ((b.lambda_max - lambda) * (lambda - b.lambda_min)).sqrt() / lambda
}

/// Porter-Thomas (standard normal) density of eigenvector components.
pub fn porter_thomas_density(u: f64) -> f64 {
    (-0.5 * u * u).exp() / (2.0 * PI).sqrt()
}
