//! The JSON report: a self-contained summary of one run.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::analysis::{Analysis, NetworkStage, SpectrumStage, TailOutcome, ThresholdSource};
use super::config::{NgChoice, PipelineConfig};
use super::export::SCHEMA_VERSION;
use super::Target;
use crate::error::Result;
use crate::market::AssetMeta;
use crate::modes::{element_histogram, frobenius_norm, upper_triangle};
use crate::network::{ClusterReport, Graph, GraphKind};
use crate::spectral::{bulk_indices, eigenvector_component_sample, RmtBounds};
use crate::stats::{ks_statistic_normal, mean_std, Histogram};
use crate::tails::TailFit;

/// Slack around the random-matrix support used when counting surrogate
/// eigenvalues as bulk.
pub const BULK_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct RunInfo {
    pub config: PipelineConfig,
    pub seed: u64,
    pub target: Target,
    pub first_date: NaiveDate,
    pub last_date: NaiveDate,
    pub n_assets: usize,
    pub n_dates: usize,
    pub n_returns: Option<usize>,
    pub dropped_dates: Vec<NaiveDate>,
    pub assets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TailEntry {
    Fit(TailFit),
    Failed { error: String },
}

impl From<&TailOutcome> for TailEntry {
    fn from(o: &TailOutcome) -> Self {
        match o {
            Ok(fit) => TailEntry::Fit(*fit),
            Err(error) => TailEntry::Failed {
                error: error.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AssetTailSummary {
    pub code: String,
    pub positive: TailEntry,
    pub negative: TailEntry,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurrogateSummary {
    pub count: usize,
    pub seed: u64,
    /// Share of all surrogate eigenvalues inside `[lambda_min, lambda_max]`.
    pub fraction_within_bounds: f64,
    /// Same, with the support widened by `BULK_MARGIN` on each side.
    pub fraction_within_margin: f64,
    pub largest_eigenvalue: Option<f64>,
    /// Kolmogorov–Smirnov distance of the pooled bulk eigenvector components
    /// from the standard normal.
    pub pooled_ks: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub bounds: RmtBounds,
    pub above_bounds: usize,
    pub within_bounds: usize,
    pub below_bounds: usize,
    pub jacobi_sweeps: usize,
    pub bulk_ks: Option<f64>,
    pub surrogates: SurrogateSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeadingComponent {
    pub code: String,
    pub component: f64,
    pub sign: i8,
    pub market_class: String,
    pub region: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeadingMode {
    pub eigenvalue: f64,
    /// Fraction of the total variance carried by the leading mode.
    pub variance_share: f64,
    pub components: Vec<LeadingComponent>,
    /// Mean component per market class.
    pub class_means: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HistogramSummary {
    pub bins: usize,
    pub bin_width: f64,
    pub first_center: Option<f64>,
    pub last_center: Option<f64>,
    pub element_mean: f64,
    pub element_std: f64,
}

impl HistogramSummary {
    fn new(h: &Histogram, elements: &[f64]) -> Self {
        let (element_mean, element_std) = mean_std(elements);
        Self {
            bins: h.bins.len(),
            bin_width: h.bin_width,
            first_center: h.bins.first().map(|b| b.0),
            last_center: h.bins.last().map(|b| b.0),
            element_mean,
            element_std,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModesSummary {
    pub n_g: usize,
    pub n_g_requested: NgChoice,
    pub n_g_auto: usize,
    pub frobenius: BTreeMap<&'static str, f64>,
    pub histograms: BTreeMap<&'static str, HistogramSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeSummary {
    pub source: usize,
    pub target: usize,
    pub source_code: String,
    pub target_code: String,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HubSummary {
    pub code: String,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub kind: GraphKind,
    pub n_nodes: usize,
    pub edges: Vec<EdgeSummary>,
    pub total_weight: f64,
    pub components: Vec<Vec<String>>,
    pub isolated: Vec<String>,
    pub hubs: Vec<HubSummary>,
    pub mean_degree: f64,
}

impl GraphSummary {
    fn new(g: &Graph, clusters: &ClusterReport) -> Self {
        let code = |v: usize| g.nodes[v].code.clone();
        let degrees: Vec<f64> = clusters.degrees.iter().map(|&d| d as f64).collect();
        Self {
            kind: g.kind,
            n_nodes: g.n_nodes(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeSummary {
                    source: e.i + 1,
                    target: e.j + 1,
                    source_code: code(e.i),
                    target_code: code(e.j),
                    weight: e.weight,
                })
                .collect(),
            total_weight: g.total_weight(),
            components: clusters
                .components
                .iter()
                .map(|c| c.iter().map(|&v| code(v)).collect())
                .collect(),
            isolated: clusters.isolated.iter().map(|&v| code(v)).collect(),
            hubs: clusters
                .hubs
                .iter()
                .map(|&(v, degree)| HubSummary {
                    code: code(v),
                    degree,
                })
                .collect(),
            mean_degree: mean_std(&degrees).0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdSummary {
    pub c_th: f64,
    pub chosen_by: &'static str,
    pub recommended: f64,
    pub sweep_points: usize,
    pub graph: GraphSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub run: RunInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tails: Option<Vec<AssetTailSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leading_mode: Option<LeadingMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<ModesSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mst: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<ThresholdSummary>,
}

fn ks_or_none(samples: &[f64]) -> Option<f64> {
    (!samples.is_empty()).then(|| ks_statistic_normal(samples))
}

fn spectrum_summary(s: &SpectrumStage) -> Result<SpectrumSummary> {
    let sd = &s.decomposition;
    let b = &s.bounds;
    let values = sd.eigenvalues();
    let bulk = eigenvector_component_sample(sd, &bulk_indices(sd, b))?;

    let mut pooled = Vec::new();
    let (mut total, mut inside, mut padded) = (0usize, 0usize, 0usize);
    let mut largest: Option<f64> = None;
    for sur in &s.surrogates {
        for &l in sur.eigenvalues() {
            total += 1;
            inside += usize::from(b.contains(l));
            padded +=
                usize::from(l >= b.lambda_min - BULK_MARGIN && l <= b.lambda_max + BULK_MARGIN);
            largest = Some(largest.map_or(l, |m| m.max(l)));
        }
        pooled.extend(eigenvector_component_sample(sur, &bulk_indices(sur, b))?);
    }
    let share = |k: usize| {
        if total == 0 {
            0.0
        } else {
            k as f64 / total as f64
        }
    };

    Ok(SpectrumSummary {
        eigenvalues: values.to_vec(),
        bounds: *b,
        above_bounds: values.iter().filter(|&&l| l > b.lambda_max).count(),
        within_bounds: values.iter().filter(|&&l| b.contains(l)).count(),
        below_bounds: values.iter().filter(|&&l| l < b.lambda_min).count(),
        jacobi_sweeps: sd.sweeps(),
        bulk_ks: ks_or_none(&bulk),
        surrogates: SurrogateSummary {
            count: s.surrogates.len(),
            seed: s.surrogate_seed,
            fraction_within_bounds: share(inside),
            fraction_within_margin: share(padded),
            largest_eigenvalue: largest,
            pooled_ks: ks_or_none(&pooled),
        },
    })
}

fn leading_mode(s: &SpectrumStage, assets: &[AssetMeta]) -> LeadingMode {
    let sd = &s.decomposition;
    let u0 = sd.eigenvector(0);
    let components: Vec<LeadingComponent> = assets
        .iter()
        .zip(u0.iter())
        .map(|(a, &x)| LeadingComponent {
            code: a.code.clone(),
            component: x,
            sign: if x < 0.0 { -1 } else { 1 },
            market_class: a.market_class.as_str().to_string(),
            region: a.region.clone(),
        })
        .collect();
    let mut by_class: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for c in &components {
        by_class
            .entry(c.market_class.clone())
            .or_default()
            .push(c.component);
    }
    LeadingMode {
        eigenvalue: sd.eigenvalues()[0],
        variance_share: sd.eigenvalues()[0] / sd.size() as f64,
        components,
        class_means: by_class
            .into_iter()
            .map(|(k, v)| (k, mean_std(&v).0))
            .collect(),
    }
}

fn threshold_summary(n: &NetworkStage) -> ThresholdSummary {
    ThresholdSummary {
        c_th: n.c_th,
        chosen_by: match n.c_th_source {
            ThresholdSource::Sweep => "sweep",
            ThresholdSource::Fixed => "fixed",
        },
        recommended: n.sweep.recommended,
        sweep_points: n.sweep.points.len(),
        graph: GraphSummary::new(&n.threshold, &n.threshold_clusters),
    }
}

/// Summarizes whatever stages the analysis reached.
pub fn build_report(a: &Analysis) -> Result<AnalysisReport> {
    let cfg = &a.config;
    let dates = a.prices.dates();
    let assets = a.prices.assets();
    let run = RunInfo {
        config: cfg.clone(),
        seed: cfg.seed,
        target: a.target,
        first_date: dates[0],
        last_date: dates[dates.len() - 1],
        n_assets: assets.len(),
        n_dates: dates.len(),
        n_returns: a.returns.as_ref().map(|r| r.normalized.n_periods()),
        dropped_dates: a.prices.dropped_dates().to_vec(),
        assets: assets.iter().map(|x| x.code.clone()).collect(),
    };

    let tails = a.tails.as_ref().map(|ts| {
        assets
            .iter()
            .zip(ts)
            .map(|(x, t)| AssetTailSummary {
                code: x.code.clone(),
                positive: (&t.positive).into(),
                negative: (&t.negative).into(),
            })
            .collect()
    });

    let spectrum = a.spectrum.as_ref().map(spectrum_summary).transpose()?;
    let leading = a.spectrum.as_ref().map(|s| leading_mode(s, assets));

    let modes = match (&a.spectrum, &a.modes) {
        (Some(s), Some(m)) => {
            let d = &m.decomposition;
            let parts = [
                ("full", s.correlation.entries()),
                ("global", &d.c_global),
                ("group", &d.c_group),
                ("random", &d.c_random),
            ];
            let mut frobenius = BTreeMap::new();
            let mut histograms = BTreeMap::new();
            for (name, mat) in parts {
                frobenius.insert(name, frobenius_norm(mat));
                let h = element_histogram(mat, cfg.histogram_bins)?;
                histograms.insert(name, HistogramSummary::new(&h, &upper_triangle(mat)));
            }
            Some(ModesSummary {
                n_g: d.n_g,
                n_g_requested: cfg.n_g,
                n_g_auto: m.n_g_auto,
                frobenius,
                histograms,
            })
        }
        _ => None,
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        run,
        tails,
        spectrum,
        leading_mode: leading,
        modes,
        mst: a
            .networks
            .as_ref()
            .map(|n| GraphSummary::new(&n.mst, &n.mst_clusters)),
        threshold: a.networks.as_ref().map(threshold_summary),
    })
}
