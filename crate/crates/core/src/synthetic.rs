//! Seeded synthetic panels: independent Gaussian returns, planted factor
//! models, Pareto samples, and price paths built from return panels.

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::market::{
    metadata_csv, normalize_returns, price_table_csv, AssetMeta, MarketClass, PricePanel,
    ReturnPanel, VolatilityConvention, DEFAULT_PEG_TOLERANCE,
};

/// Placeholder metadata `S01, S02, ...` cycling through the market classes.
pub fn synthetic_assets(n: usize) -> Vec<AssetMeta> {
    const CLASSES: [MarketClass; 3] = [
        MarketClass::Developed,
        MarketClass::Emerging,
        MarketClass::Frontier,
    ];
    const REGIONS: [&str; 4] = ["Europe", "Asia", "Africa", "Americas"];
    (1..=n)
        .map(|i| {
            AssetMeta::new(
                i,
                format!("S{i:02}"),
                format!("Synthetic {i}"),
                CLASSES[(i - 1) % 3],
                REGIONS[(i - 1) % 4],
            )
        })
        .collect()
}

fn normal_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<f64> {
    Array2::from_shape_simple_fn((rows, cols), || rng.sample(StandardNormal))
}

/// Normalized panel of independent standard-normal returns.
pub fn standard_normal_panel(n: usize, t: usize, seed: u64) -> Result<ReturnPanel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = normal_matrix(&mut rng, n, t);
    let rp = ReturnPanel::from_returns(
        synthetic_assets(n),
        Vec::new(),
        r,
        VolatilityConvention::Population,
        DEFAULT_PEG_TOLERANCE,
    )?;
    normalize_returns(&rp)
}

/// One global factor shared by every asset plus one factor per group.
///
/// `r_i = g * F_0 + h * F_k(i) + sqrt(1 - g^2 - h^2) * e_i` for members of
/// group `k`, and `r_i = g * F_0 + sqrt(1 - g^2) * e_i` for assets outside
/// every group.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorModel {
    pub n_assets: usize,
    pub n_periods: usize,
    pub global_loading: f64,
    pub group_loading: f64,
    /// Member positions of each group; groups must be disjoint.
    pub groups: Vec<Vec<usize>>,
}

impl FactorModel {
    /// Forty assets, 4000 periods, two groups of ten (positions 0..10 and
    /// 10..20), global loading 0.6 and group loading 0.4. The remaining twenty
    /// assets carry only the global factor.
    pub fn two_groups() -> Self {
        Self {
            n_assets: 40,
            n_periods: 4000,
            global_loading: 0.6,
            group_loading: 0.4,
            groups: vec![(0..10).collect(), (10..20).collect()],
        }
    }

    /// Block label per asset: the group index, or `groups.len()` for assets
    /// that load only on the global factor.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![self.groups.len(); self.n_assets];
        for (k, members) in self.groups.iter().enumerate() {
            for &i in members {
                labels[i] = k;
            }
        }
        labels
    }

    /// Raw (unnormalized) returns drawn with the given seed.
    pub fn sample_returns(&self, seed: u64) -> Array2<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = normal_matrix(&mut rng, 1 + self.groups.len(), self.n_periods);
        let noise = normal_matrix(&mut rng, self.n_assets, self.n_periods);
        let labels = self.block_labels();
        let g = self.global_loading;
        Array2::from_shape_fn((self.n_assets, self.n_periods), |(i, t)| {
            let k = labels[i];
            if k < self.groups.len() {
                let h = self.group_loading;
                g * factors[[0, t]]
                    + h * factors[[1 + k, t]]
                    + (1.0 - g * g - h * h).sqrt() * noise[[i, t]]
            } else {
                g * factors[[0, t]] + (1.0 - g * g).sqrt() * noise[[i, t]]
            }
        })
    }

    /// Normalized return panel.
    pub fn sample(&self, seed: u64) -> Result<ReturnPanel> {
        let rp = ReturnPanel::from_returns(
            synthetic_assets(self.n_assets),
            Vec::new(),
            self.sample_returns(seed),
            VolatilityConvention::Population,
            DEFAULT_PEG_TOLERANCE,
        )?;
        normalize_returns(&rp)
    }

    /// Daily price paths whose log-returns are the sampled returns scaled to
    /// `daily_vol`, starting at 1 on `start`.
    pub fn sample_prices(&self, seed: u64, daily_vol: f64, start: NaiveDate) -> Result<PricePanel> {
        prices_from_returns(&(self.sample_returns(seed) * daily_vol), start)
    }
}

/// Builds price paths `P(0) = 1, P(t+1) = P(t) exp(r(t))` on consecutive days.
pub fn prices_from_returns(returns: &Array2<f64>, start: NaiveDate) -> Result<PricePanel> {
    let (n, t) = returns.dim();
    let mut prices = Array2::<f64>::zeros((n, t + 1));
    for i in 0..n {
        let mut logp = 0.0;
        prices[[i, 0]] = 1.0;
        for k in 0..t {
            logp += returns[[i, k]];
            prices[[i, k + 1]] = logp.exp();
        }
    }
    let dates = (0..=t as u64)
        .map(|d| start + chrono::Days::new(d))
        .collect();
    PricePanel::new(synthetic_assets(n), dates, prices)
}

/// Writes `prices.csv` and `meta.csv` for a panel into `dir` and returns
/// their paths.
pub fn write_inputs(panel: &PricePanel, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let prices = dir.join("prices.csv");
    let meta = dir.join("meta.csv");
    std::fs::write(&prices, price_table_csv(panel)).map_err(|e| Error::io(&prices, e))?;
    std::fs::write(&meta, metadata_csv(panel.assets())?).map_err(|e| Error::io(&meta, e))?;
    Ok((prices, meta))
}

/// Inverse-CDF draws from the Pareto law `P(X > x) = x^-alpha`, `x >= 1`.
pub fn pareto_samples(n: usize, alpha: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            // 1 - U lies in (0, 1]
            let u: f64 = 1.0 - rng.random::<f64>();
            u.powf(-1.0 / alpha)
        })
        .collect()
}

/// Pareto magnitudes with random signs, for symmetric fat-tailed returns.
pub fn symmetric_pareto_samples(n: usize, alpha: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pareto_samples(n, alpha, seed ^ 0x5A5A_5A5A)
        .into_iter()
        .map(|x| if rng.random::<bool>() { x } else { -x })
        .collect()
}
