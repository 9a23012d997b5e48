use ndarray::Array2;

use super::config::{NgChoice, PipelineConfig, ThresholdChoice};
use super::{PipelineError, Stage, Target};
use crate::error::Result;
use crate::market::{
    compute_log_returns, load_price_panel, normalize_returns, IngestOptions, PricePanel,
    ReturnOptions, ReturnPanel, DEFAULT_PEG_TOLERANCE,
};
use crate::modes::{decompose_modes, select_ng, ModeDecomposition};
use crate::network::{
    cluster_report, default_threshold_grid, mantegna_distance, minimum_spanning_tree,
    threshold_network, threshold_sweep, ClusterReport, Graph, ThresholdSweep,
};
use crate::spectral::{
    correlation_matrix, derive_seed, eigendecompose, rmt_bounds, surrogate_spectra,
    CorrelationMatrix, RmtBounds, SpectralDecomposition,
};
use crate::tails::{fit_tail_exponent, Side, TailFit};

/// Stream id for surrogate shuffles under the master seed.
pub const SURROGATE_STREAM: u64 = 1;

/// A tail fit, or the reason the side could not be fitted.
pub type TailOutcome = std::result::Result<TailFit, String>;

#[derive(Debug, Clone)]
pub struct AssetTails {
    pub positive: TailOutcome,
    pub negative: TailOutcome,
}

#[derive(Debug, Clone)]
pub struct ReturnsStage {
    pub raw: ReturnPanel,
    pub normalized: ReturnPanel,
}

#[derive(Debug, Clone)]
pub struct SpectrumStage {
    pub correlation: CorrelationMatrix,
    pub decomposition: SpectralDecomposition,
    pub bounds: RmtBounds,
    pub surrogate_seed: u64,
    pub surrogates: Vec<SpectralDecomposition>,
}

#[derive(Debug, Clone)]
pub struct ModesStage {
    /// Modes above the random-matrix bound, excluding the leading one.
    pub n_g_auto: usize,
    pub decomposition: ModeDecomposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSource {
    Sweep,
    Fixed,
}

#[derive(Debug, Clone)]
pub struct NetworkStage {
    pub distances: Array2<f64>,
    pub mst: Graph,
    pub mst_clusters: ClusterReport,
    pub sweep: ThresholdSweep,
    pub c_th: f64,
    pub c_th_source: ThresholdSource,
    pub threshold: Graph,
    pub threshold_clusters: ClusterReport,
}

/// Everything computed for one run, up to the stage the target needs.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub config: PipelineConfig,
    pub target: Target,
    pub prices: PricePanel,
    pub returns: Option<ReturnsStage>,
    pub tails: Option<Vec<AssetTails>>,
    pub spectrum: Option<SpectrumStage>,
    pub modes: Option<ModesStage>,
    pub networks: Option<NetworkStage>,
}

fn at<T>(stage: Stage, r: Result<T>) -> std::result::Result<T, PipelineError> {
    r.map_err(|source| PipelineError { stage, source })
}

fn fit_outcome(samples: &[f64], side: Side, fraction: f64) -> TailOutcome {
    fit_tail_exponent(samples, side, fraction).map_err(|e| e.to_string())
}

/// Runs every stage `target` depends on. Nothing is written to disk.
pub fn analyze(
    cfg: &PipelineConfig,
    target: Target,
) -> std::result::Result<Analysis, PipelineError> {
    at(Stage::Ingest, cfg.validate())?;
    let prices = at(
        Stage::Ingest,
        load_price_panel(
            &cfg.prices,
            &cfg.meta,
            &IngestOptions {
                fill_horizon: cfg.fill_horizon,
            },
        ),
    )?;
    let mut analysis = Analysis {
        config: cfg.clone(),
        target,
        prices,
        returns: None,
        tails: None,
        spectrum: None,
        modes: None,
        networks: None,
    };
    if target.depth() < Stage::Returns {
        return Ok(analysis);
    }

    let opts = ReturnOptions {
        delta: cfg.delta,
        sampling: cfg.sampling,
        convention: cfg.volatility,
        peg_tolerance: DEFAULT_PEG_TOLERANCE,
    };
    let raw = at(Stage::Returns, compute_log_returns(&analysis.prices, &opts))?;
    let normalized = at(Stage::Returns, normalize_returns(&raw))?;
    analysis.returns = Some(ReturnsStage { raw, normalized });
    let rp = &analysis.returns.as_ref().expect("set above").normalized;
    if target.depth() < Stage::Tails {
        return Ok(analysis);
    }

    let tails = rp
        .returns()
        .rows()
        .into_iter()
        .map(|row| {
            let xs = row.to_vec();
            AssetTails {
                positive: fit_outcome(&xs, Side::Positive, cfg.tail_fraction),
                negative: fit_outcome(&xs, Side::Negative, cfg.tail_fraction),
            }
        })
        .collect();
    analysis.tails = Some(tails);
    if target.depth() < Stage::Correlation {
        return Ok(analysis);
    }

    let correlation = at(Stage::Correlation, correlation_matrix(rp))?;
    let decomposition = at(Stage::Spectrum, eigendecompose(&correlation))?;
    let bounds = at(Stage::Spectrum, rmt_bounds(rp.n_assets(), rp.n_periods()))?;
    let surrogate_seed = derive_seed(cfg.seed, SURROGATE_STREAM);
    let surrogates = at(
        Stage::Surrogates,
        surrogate_spectra(rp, surrogate_seed, cfg.surrogates),
    )?;
    let spectrum = SpectrumStage {
        correlation,
        decomposition,
        bounds,
        surrogate_seed,
        surrogates,
    };
    if target.depth() < Stage::Decompose {
        analysis.spectrum = Some(spectrum);
        return Ok(analysis);
    }

    let sd = &spectrum.decomposition;
    let n_g_auto = select_ng(sd, &spectrum.bounds);
    let n_g = match cfg.n_g {
        NgChoice::Auto => n_g_auto,
        // A request larger than the panel allows keeps every non-leading mode.
        NgChoice::Fixed(k) => k.min(sd.size().saturating_sub(1)),
    };
    let decomposition = at(Stage::Decompose, decompose_modes(sd, n_g))?;
    let modes = ModesStage {
        n_g_auto,
        decomposition,
    };
    if target.depth() < Stage::Mst {
        analysis.spectrum = Some(spectrum);
        analysis.modes = Some(modes);
        return Ok(analysis);
    }

    let assets = rp.assets();
    let distances = at(Stage::Mst, mantegna_distance(&spectrum.correlation))?;
    let mst = at(Stage::Mst, minimum_spanning_tree(&distances, assets))?;
    let mst_clusters = cluster_report(&mst, cfg.hub_sigma);

    let c_group = &modes.decomposition.c_group;
    let grid = default_threshold_grid(c_group, cfg.sweep_steps);
    let sweep = at(Stage::Threshnet, threshold_sweep(c_group, &grid, assets))?;
    let (c_th, c_th_source) = match cfg.c_th {
        ThresholdChoice::Auto => (sweep.recommended, ThresholdSource::Sweep),
        ThresholdChoice::Fixed(x) => (x, ThresholdSource::Fixed),
    };
    let threshold = at(Stage::Threshnet, threshold_network(c_group, c_th, assets))?;
    let threshold_clusters = cluster_report(&threshold, cfg.hub_sigma);

    analysis.spectrum = Some(spectrum);
    analysis.modes = Some(modes);
    analysis.networks = Some(NetworkStage {
        distances,
        mst,
        mst_clusters,
        sweep,
        c_th,
        c_th_source,
        threshold,
        threshold_clusters,
    });
    Ok(analysis)
}
