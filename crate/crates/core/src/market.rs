//! Price-panel ingestion and log-return construction.
//!
//! A price table is a comma-separated file with a `date` column followed by
//! one column per asset code. Missing quotes are forward-filled for a bounded
//! number of rows; dates that remain incomplete are dropped so every asset is
//! observed on every surviving date.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use chrono::NaiveDate;
use ndarray::{Array2, ArrayView1, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Volatilities below this are treated as pegged or constant series.
pub const DEFAULT_PEG_TOLERANCE: f64 = 1e-10;

/// Default number of consecutive missing rows that may be forward-filled.
pub const DEFAULT_FILL_HORIZON: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarketClass {
    Developed,
    Emerging,
    Frontier,
}

impl MarketClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MarketClass::Developed => "developed",
            MarketClass::Emerging => "emerging",
            MarketClass::Frontier => "frontier",
        }
    }
}

impl fmt::Display for MarketClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MarketClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "developed" => Ok(MarketClass::Developed),
            "emerging" => Ok(MarketClass::Emerging),
            "frontier" => Ok(MarketClass::Frontier),
            other => Err(format!("unknown market class `{other}`")),
        }
    }
}

/// Descriptive record for one asset. `index` is 1-based and matches the
/// asset's row in the panel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssetMeta {
    pub index: usize,
    pub code: String,
    pub name: String,
    pub market_class: MarketClass,
    pub region: String,
}

impl AssetMeta {
    pub fn new(
        index: usize,
        code: impl Into<String>,
        name: impl Into<String>,
        market_class: MarketClass,
        region: impl Into<String>,
    ) -> Self {
        Self {
            index,
            code: code.into(),
            name: name.into(),
            market_class,
            region: region.into(),
        }
    }
}

/// Checks that indices run 1..=N in order and codes are unique and nonempty.
pub fn validate_assets(assets: &[AssetMeta]) -> Result<()> {
    let mut seen = HashSet::new();
    for (pos, a) in assets.iter().enumerate() {
        if a.index != pos + 1 {
            return Err(Error::InvalidMetadata {
                line: pos + 1,
                reason: format!("index {} is not contiguous (expected {})", a.index, pos + 1),
            });
        }
        if a.code.trim().is_empty() {
            return Err(Error::InvalidMetadata {
                line: pos + 1,
                reason: "empty asset code".into(),
            });
        }
        if !seen.insert(a.code.as_str()) {
            return Err(Error::InvalidMetadata {
                line: pos + 1,
                reason: format!("duplicate asset code `{}`", a.code),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
struct MetaRecord {
    index: usize,
    code: String,
    name: String,
    market_class: String,
    region: String,
}

/// Parses `index,code,name,market_class,region` rows. Rows may appear in any
/// order; the result is sorted by index, which must be contiguous from 1.
pub fn parse_metadata(text: &str) -> Result<Vec<AssetMeta>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut assets = Vec::new();
    for (i, record) in reader.deserialize::<MetaRecord>().enumerate() {
        let line = i + 2;
        let rec = record.map_err(|e| Error::InvalidMetadata {
            line,
            reason: e.to_string(),
        })?;
        let market_class = rec
            .market_class
            .parse()
            .map_err(|reason| Error::InvalidMetadata { line, reason })?;
        assets.push(AssetMeta {
            index: rec.index,
            code: rec.code,
            name: rec.name,
            market_class,
            region: rec.region,
        });
    }
    if assets.is_empty() {
        return Err(Error::InvalidMetadata {
            line: 1,
            reason: "no asset rows".into(),
        });
    }
    assets.sort_by_key(|a| a.index);
    validate_assets(&assets)?;
    Ok(assets)
}

/// Aligned panel of strictly positive prices, one row per asset.
#[derive(Debug, Clone, PartialEq)]
pub struct PricePanel {
    assets: Vec<AssetMeta>,
    dates: Vec<NaiveDate>,
    prices: Array2<f64>,
    dropped_dates: Vec<NaiveDate>,
}

impl PricePanel {
    pub fn new(assets: Vec<AssetMeta>, dates: Vec<NaiveDate>, prices: Array2<f64>) -> Result<Self> {
        validate_assets(&assets)?;
        if assets.len() < 2 {
            return Err(Error::TooFewAssets(assets.len()));
        }
        if dates.len() < 3 {
            return Err(Error::TooFewDates {
                found: dates.len(),
                required: 3,
            });
        }
        if prices.dim() != (assets.len(), dates.len()) {
            return Err(Error::DimensionMismatch(format!(
                "prices are {:?}, expected {} assets x {} dates",
                prices.dim(),
                assets.len(),
                dates.len()
            )));
        }
        if let Some(w) = dates.windows(2).find(|w| w[0] >= w[1]) {
            return Err(if w[0] == w[1] {
                Error::DuplicateDate(w[0].to_string())
            } else {
                Error::MalformedTable(format!("dates not increasing at {}", w[1]))
            });
        }
        for ((i, t), &p) in prices.indexed_iter() {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidPrice {
                    date: dates[t].to_string(),
                    code: assets[i].code.clone(),
                    value: p.to_string(),
                    reason: "price must be positive and finite",
                });
            }
        }
        Ok(Self {
            assets,
            dates,
            prices,
            dropped_dates: Vec::new(),
        })
    }

    pub fn assets(&self) -> &[AssetMeta] {
        &self.assets
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    /// N x (T+1) price matrix.
    pub fn prices(&self) -> &Array2<f64> {
        &self.prices
    }

    /// Dates removed during ingestion because some asset could not be filled.
    pub fn dropped_dates(&self) -> &[NaiveDate] {
        &self.dropped_dates
    }

    pub fn n_assets(&self) -> usize {
        self.assets.len()
    }

    pub fn n_dates(&self) -> usize {
        self.dates.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IngestOptions {
    /// Maximum run of consecutive missing rows that is forward-filled.
    pub fill_horizon: usize,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            fill_horizon: DEFAULT_FILL_HORIZON,
        }
    }
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell.eq_ignore_ascii_case("na")
}

fn parse_date(s: &str) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|_| Error::InvalidDate(s.to_string()))
}

/// Parses a price table and its metadata into an aligned panel.
///
/// Asset rows follow the metadata index order, restricted to the codes that
/// appear in the table, and are re-indexed contiguously from 1.
pub fn parse_price_panel(raw_table: &str, meta: &str, opts: &IngestOptions) -> Result<PricePanel> {
    let metadata = parse_metadata(meta)?;
    let by_code: HashMap<&str, &AssetMeta> =
        metadata.iter().map(|a| (a.code.as_str(), a)).collect();

    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(raw_table.as_bytes());
    let header = reader.headers()?.clone();
    if header.len() < 2 || !header[0].eq_ignore_ascii_case("date") {
        return Err(Error::MalformedTable(
            "header must be `date` followed by asset codes".into(),
        ));
    }
    let codes: Vec<&str> = header.iter().skip(1).collect();
    let mut seen = HashSet::new();
    for code in &codes {
        if !by_code.contains_key(code) {
            return Err(Error::UnknownAsset(code.to_string()));
        }
        if !seen.insert(*code) {
            return Err(Error::MalformedTable(format!("duplicate column `{code}`")));
        }
    }

    let mut rows: Vec<(NaiveDate, Vec<Option<f64>>)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != header.len() {
            return Err(Error::MalformedTable(format!(
                "row with {} fields, header has {}",
                record.len(),
                header.len()
            )));
        }
        let date = parse_date(&record[0])?;
        let mut values = Vec::with_capacity(codes.len());
        for (code, cell) in codes.iter().zip(record.iter().skip(1)) {
            if is_missing(cell) {
                values.push(None);
                continue;
            }
            let bad = |reason| Error::InvalidPrice {
                date: date.to_string(),
                code: code.to_string(),
                value: cell.to_string(),
                reason,
            };
            let v: f64 = cell.parse().map_err(|_| bad("not a number"))?;
            if !v.is_finite() {
                return Err(bad("not finite"));
            }
            if v <= 0.0 {
                return Err(bad("price must be positive"));
            }
            values.push(Some(v));
        }
        rows.push((date, values));
    }

    rows.sort_by_key(|(d, _)| *d);
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateDate(w[0].0.to_string()));
    }

    // Forward fill from the last observed quote while the gap is short enough.
    let n_cols = codes.len();
    let mut last: Vec<Option<f64>> = vec![None; n_cols];
    let mut gap = vec![0usize; n_cols];
    let mut kept_dates = Vec::new();
    let mut kept_rows: Vec<Vec<f64>> = Vec::new();
    let mut dropped_dates = Vec::new();
    for (date, values) in rows {
        let mut filled = Vec::with_capacity(n_cols);
        for (c, v) in values.into_iter().enumerate() {
            match v {
                Some(p) => {
                    last[c] = Some(p);
                    gap[c] = 0;
                    filled.push(Some(p));
                }
                None => {
                    gap[c] += 1;
                    filled.push(last[c].filter(|_| gap[c] <= opts.fill_horizon));
                }
            }
        }
        if filled.iter().all(Option::is_some) {
            kept_dates.push(date);
            kept_rows.push(filled.into_iter().flatten().collect());
        } else {
            dropped_dates.push(date);
        }
    }
    if kept_dates.len() < 3 {
        return Err(Error::TooFewDates {
            found: kept_dates.len(),
            required: 3,
        });
    }

    // Reorder columns by metadata index.
    let mut order: Vec<(usize, &AssetMeta)> = codes
        .iter()
        .enumerate()
        .map(|(col, code)| (col, by_code[code]))
        .collect();
    order.sort_by_key(|(_, m)| m.index);
    let assets: Vec<AssetMeta> = order
        .iter()
        .enumerate()
        .map(|(pos, (_, m))| AssetMeta {
            index: pos + 1,
            ..(*m).clone()
        })
        .collect();
    let prices = Array2::from_shape_fn((assets.len(), kept_dates.len()), |(i, t)| {
        kept_rows[t][order[i].0]
    });

    let mut panel = PricePanel::new(assets, kept_dates, prices)?;
    panel.dropped_dates = dropped_dates;
    Ok(panel)
}

/// Reads and parses the price and metadata files.
pub fn load_price_panel(prices: &Path, meta: &Path, opts: &IngestOptions) -> Result<PricePanel> {
    let raw = std::fs::read_to_string(prices).map_err(|e| Error::io(prices, e))?;
    let meta_text = std::fs::read_to_string(meta).map_err(|e| Error::io(meta, e))?;
    parse_price_panel(&raw, &meta_text, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VolatilityConvention {
    /// Divide by T.
    #[default]
    Population,
    /// Divide by T - 1.
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Stride 1: every date starts a return interval.
    #[default]
    Sliding,
    /// Stride `delta`: return intervals do not overlap.
    NonOverlapping,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnOptions {
    pub delta: usize,
    pub sampling: Sampling,
    pub convention: VolatilityConvention,
    pub peg_tolerance: f64,
}

impl Default for ReturnOptions {
    fn default() -> Self {
        Self {
            delta: 1,
            sampling: Sampling::Sliding,
            convention: VolatilityConvention::Population,
            peg_tolerance: DEFAULT_PEG_TOLERANCE,
        }
    }
}

/// Standard deviation of a series, mean-centred in two passes.
pub fn volatility(row: ArrayView1<'_, f64>, convention: VolatilityConvention) -> f64 {
    let n = row.len();
    if n == 0 {
        return 0.0;
    }
    let mean = row.sum() / n as f64;
    let ss: f64 = row.iter().map(|x| (x - mean) * (x - mean)).sum();
    let denom = match convention {
        VolatilityConvention::Population => n as f64,
        VolatilityConvention::Sample => (n.max(2) - 1) as f64,
    };
    (ss / denom).sqrt()
}

/// N x T log-returns with per-asset volatility.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnPanel {
    assets: Vec<AssetMeta>,
    dates: Vec<NaiveDate>,
    returns: Array2<f64>,
    sigma: Vec<f64>,
    normalized: bool,
    convention: VolatilityConvention,
}

impl ReturnPanel {
    /// Wraps a raw return matrix, computing volatilities and applying the peg
    /// guard. `dates` may be empty when the rows are not tied to a calendar.
    pub fn from_returns(
        assets: Vec<AssetMeta>,
        dates: Vec<NaiveDate>,
        returns: Array2<f64>,
        convention: VolatilityConvention,
        peg_tolerance: f64,
    ) -> Result<Self> {
        validate_assets(&assets)?;
        if assets.len() < 2 {
            return Err(Error::TooFewAssets(assets.len()));
        }
        if returns.nrows() != assets.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} return rows for {} assets",
                returns.nrows(),
                assets.len()
            )));
        }
        if returns.ncols() < 2 {
            return Err(Error::TooFewDates {
                found: returns.ncols(),
                required: 2,
            });
        }
        if !dates.is_empty() && dates.len() != returns.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "{} dates for {} return columns",
                dates.len(),
                returns.ncols()
            )));
        }
        if returns.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("returns must be finite".into()));
        }
        let sigma: Vec<f64> = returns
            .axis_iter(Axis(0))
            .map(|row| volatility(row, convention))
            .collect();
        for (a, &s) in assets.iter().zip(&sigma) {
            if s.is_nan() || s < peg_tolerance {
                return Err(Error::PeggedSeries {
                    code: a.code.clone(),
                    sigma: s,
                    tolerance: peg_tolerance,
                });
            }
        }
        Ok(Self {
            assets,
            dates,
            returns,
            sigma,
            normalized: false,
            convention,
        })
    }

    pub fn assets(&self) -> &[AssetMeta] {
        &self.assets
    }

    /// End date of each return interval (empty for calendar-free panels).
    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn returns(&self) -> &Array2<f64> {
        &self.returns
    }

    /// Volatility of each raw return series, retained through normalization.
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn convention(&self) -> VolatilityConvention {
        self.convention
    }

    pub fn n_assets(&self) -> usize {
        self.returns.nrows()
    }

    pub fn n_periods(&self) -> usize {
        self.returns.ncols()
    }

    /// Same panel with a different return matrix; used by surrogates.
    pub(crate) fn with_returns(&self, returns: Array2<f64>) -> Self {
        Self {
            returns,
            ..self.clone()
        }
    }
}

/// Log-returns `ln P(t + delta) - ln P(t)` for every asset.
pub fn compute_log_returns(panel: &PricePanel, opts: &ReturnOptions) -> Result<ReturnPanel> {
    let delta = opts.delta;
    if delta == 0 {
        return Err(Error::InvalidParameter("delta must be at least 1".into()));
    }
    if panel.n_dates() < delta + 2 {
        return Err(Error::TooFewDates {
            found: panel.n_dates(),
            required: delta + 2,
        });
    }
    let stride = match opts.sampling {
        Sampling::Sliding => 1,
        Sampling::NonOverlapping => delta,
    };
    let starts: Vec<usize> = (0..panel.n_dates() - delta).step_by(stride).collect();
    if starts.len() < 2 {
        return Err(Error::TooFewDates {
            found: panel.n_dates(),
            required: 2 * delta + 1,
        });
    }
    let logp = panel.prices().mapv(f64::ln);
    let returns = Array2::from_shape_fn((panel.n_assets(), starts.len()), |(i, k)| {
        let t = starts[k];
        logp[[i, t + delta]] - logp[[i, t]]
    });
    let dates = starts.iter().map(|&t| panel.dates()[t + delta]).collect();
    ReturnPanel::from_returns(
        panel.assets().to_vec(),
        dates,
        returns,
        opts.convention,
        opts.peg_tolerance,
    )
}

/// Divides every return series by its own volatility.
///
/// Already-normalized panels are returned unchanged.
pub fn normalize_returns(rp: &ReturnPanel) -> Result<ReturnPanel> {
    if rp.normalized {
        return Ok(rp.clone());
    }
    let mut out = rp.clone();
    for (i, mut row) in out.returns.axis_iter_mut(Axis(0)).enumerate() {
        let s = rp.sigma[i];
        if !(s.is_finite() && s >= DEFAULT_PEG_TOLERANCE) {
            return Err(Error::PeggedSeries {
                code: rp.assets[i].code.clone(),
                sigma: s,
                tolerance: DEFAULT_PEG_TOLERANCE,
            });
        }
        row.mapv_inplace(|x| x / s);
    }
    out.normalized = true;
    Ok(out)
}

/// Metadata table in the form [`parse_metadata`] reads.
pub fn metadata_csv(assets: &[AssetMeta]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "code", "name", "market_class", "region"])?;
    for a in assets {
        w.write_record([
            a.index.to_string().as_str(),
            &a.code,
            &a.name,
            a.market_class.as_str(),
            &a.region,
        ])?;
    }
    Ok(String::from_utf8(
        w.into_inner()
            .map_err(|e| csv::Error::from(e.into_error()))?,
    )
    .expect("csv output is UTF-8"))
}

/// Price table in the form [`parse_price_panel`] reads: `date` then one
/// column per asset, one row per date.
pub fn price_table_csv(panel: &PricePanel) -> String {
    let mut out = String::from("date");
    for a in &panel.assets {
        out.push(',');
        out.push_str(&a.code);
    }
    out.push('\n');
    for (t, d) in panel.dates.iter().enumerate() {
        out.push_str(&d.to_string());
        for x in panel.prices.column(t) {
            out.push(',');
            out.push_str(&x.to_string());
        }
        out.push('\n');
    }
    out
}
