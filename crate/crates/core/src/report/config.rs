use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::market::{Sampling, VolatilityConvention, DEFAULT_FILL_HORIZON};
use crate::modes::DEFAULT_NG;
use crate::network::DEFAULT_HUB_SIGMA;
use crate::tails::DEFAULT_TAIL_FRACTION;

/// Number of group modes: fixed, or counted from the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NgChoice {
    Auto,
    Fixed(usize),
}

impl Default for NgChoice {
    fn default() -> Self {
        NgChoice::Fixed(DEFAULT_NG)
    }
}

impl FromStr for NgChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(NgChoice::Auto);
        }
        s.parse()
            .map(NgChoice::Fixed)
            .map_err(|_| format!("expected `auto` or a non-negative integer, got `{s}`"))
    }
}

impl fmt::Display for NgChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NgChoice::Auto => f.write_str("auto"),
            NgChoice::Fixed(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for NgChoice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NgChoice::Auto => s.serialize_str("auto"),
            NgChoice::Fixed(n) => s.serialize_u64(*n as u64),
        }
    }
}

/// Threshold for the group network: fixed, or picked by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ThresholdChoice {
    #[default]
    Auto,
    Fixed(f64),
}

impl FromStr for ThresholdChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(ThresholdChoice::Auto);
        }
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(ThresholdChoice::Fixed(x)),
            _ => Err(format!("expected `auto` or a real number, got `{s}`")),
        }
    }
}

impl fmt::Display for ThresholdChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdChoice::Auto => f.write_str("auto"),
            ThresholdChoice::Fixed(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for ThresholdChoice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ThresholdChoice::Auto => s.serialize_str("auto"),
            ThresholdChoice::Fixed(x) => s.serialize_f64(*x),
        }
    }
}

/// Every knob of a pipeline run. The output directory is not echoed into
/// reports so that runs written to different places stay byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub prices: PathBuf,
    pub meta: PathBuf,
    #[serde(skip)]
    pub out_dir: PathBuf,
    pub fill_horizon: usize,
    pub delta: usize,
    pub sampling: Sampling,
    pub volatility: VolatilityConvention,
    pub tail_fraction: f64,
    pub n_g: NgChoice,
    pub c_th: ThresholdChoice,
    pub surrogates: usize,
    pub seed: u64,
    pub hub_sigma: f64,
    pub histogram_bins: usize,
    pub sweep_steps: usize,
}

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SURROGATES: usize = 10;
pub const DEFAULT_HISTOGRAM_BINS: usize = 50;
pub const DEFAULT_SWEEP_STEPS: usize = 200;

impl PipelineConfig {
    pub fn new(
        prices: impl Into<PathBuf>,
        meta: impl Into<PathBuf>,
        out_dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            prices: prices.into(),
            meta: meta.into(),
            out_dir: out_dir.into(),
            fill_horizon: DEFAULT_FILL_HORIZON,
            delta: 1,
            sampling: Sampling::Sliding,
            volatility: VolatilityConvention::Population,
            tail_fraction: DEFAULT_TAIL_FRACTION,
            n_g: NgChoice::default(),
            c_th: ThresholdChoice::default(),
            surrogates: DEFAULT_SURROGATES,
            seed: DEFAULT_SEED,
            hub_sigma: DEFAULT_HUB_SIGMA,
            histogram_bins: DEFAULT_HISTOGRAM_BINS,
            sweep_steps: DEFAULT_SWEEP_STEPS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.delta == 0 {
            return bad("delta must be at least 1".into());
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 0.5) {
            return bad(format!(
                "tail fraction {} outside (0, 0.5]",
                self.tail_fraction
            ));
        }
        if !(self.hub_sigma.is_finite() && self.hub_sigma >= 0.0) {
            return bad(format!("hub sigma {} must be non-negative", self.hub_sigma));
        }
        if self.histogram_bins < 2 {
            return bad("histogram bins must be at least 2".into());
        }
        if self.sweep_steps < 2 {
            return bad("sweep steps must be at least 2".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_choices() {
        assert_eq!("auto".parse::<NgChoice>().unwrap(), NgChoice::Auto);
        assert_eq!("7".parse::<NgChoice>().unwrap(), NgChoice::Fixed(7));
        assert!("-1".parse::<NgChoice>().is_err());
        assert_eq!(
            "0.133".parse::<ThresholdChoice>().unwrap(),
            ThresholdChoice::Fixed(0.133)
        );
        assert_eq!(
            "AUTO".parse::<ThresholdChoice>().unwrap(),
            ThresholdChoice::Auto
        );
        assert!("nan".parse::<ThresholdChoice>().is_err());
    }

    #[test]
    fn defaults() {
        let c = PipelineConfig::new("p.csv", "m.csv", "out");
        assert_eq!(c.n_g, NgChoice::Fixed(6));
        assert_eq!(c.tail_fraction, 0.10);
        assert_eq!(c.surrogates, 10);
        assert_eq!(c.hub_sigma, 2.0);
        assert!(c.validate().is_ok());
        let echo = serde_json::to_value(&c).unwrap();
        assert!(echo.get("out_dir").is_none());
        assert_eq!(echo["n_g"], 6);
        assert_eq!(echo["c_th"], "auto");
    }
}
