//! Pipeline orchestration and artifact serialization.
//!
//! [`run`] computes every stage a [`Target`] needs, renders all files in
//! memory, then writes them; a failure at any point leaves no partial output.

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

mod analysis;
mod artifacts;
mod config;
pub mod export;
mod summary;

pub use analysis::{
    analyze, Analysis, AssetTails, ModesStage, NetworkStage, ReturnsStage, SpectrumStage,
    TailOutcome, ThresholdSource, SURROGATE_STREAM,
};
pub use artifacts::render;
pub use config::{
    NgChoice, PipelineConfig, ThresholdChoice, DEFAULT_HISTOGRAM_BINS, DEFAULT_SEED,
    DEFAULT_SURROGATES, DEFAULT_SWEEP_STEPS,
};
pub use export::{
    export_histogram_csv, export_json_report, export_pajek, graph_json, histogram_csv,
    pajek_string, round_significant, to_stable_json, HistogramSeries, OutputWriter, SCHEMA_VERSION,
};
pub use summary::{build_report, AnalysisReport, TailEntry, BULK_MARGIN};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Ingest,
    Returns,
    Tails,
    Correlation,
    Spectrum,
    Surrogates,
    Decompose,
    Mst,
    Threshnet,
    Export,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Returns => "returns",
            Stage::Tails => "tails",
            Stage::Correlation => "correlation",
            Stage::Spectrum => "spectrum",
            Stage::Surrogates => "surrogates",
            Stage::Decompose => "decompose",
            Stage::Mst => "mst",
            Stage::Threshnet => "threshnet",
            Stage::Export => "export",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a run should produce; one per command-line subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Ingest,
    Returns,
    Tails,
    Spectrum,
    Decompose,
    Mst,
    Threshnet,
    Report,
}

impl Target {
    /// Last computational stage the target requires.
    pub fn depth(self) -> Stage {
        match self {
            Target::Ingest => Stage::Ingest,
            Target::Returns => Stage::Returns,
            Target::Tails => Stage::Tails,
            Target::Spectrum => Stage::Surrogates,
            Target::Decompose => Stage::Decompose,
            // Both graphs are cheap once the modes exist.
            Target::Mst | Target::Threshnet | Target::Report => Stage::Threshnet,
        }
    }
}

/// A failed stage and its cause.
#[derive(Debug, thiserror::Error)]
#[error("{stage} stage failed: {source}")]
pub struct PipelineError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

/// Result of a successful run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: AnalysisReport,
    pub files: Vec<PathBuf>,
}

pub fn run(cfg: &PipelineConfig, target: Target) -> Result<RunOutput, PipelineError> {
    let analysis = analyze(cfg, target)?;
    let export = |source| PipelineError {
        stage: Stage::Export,
        source,
    };
    let (report, files) = render(&analysis).map_err(export)?;
    let mut writer = OutputWriter::new(&cfg.out_dir);
    artifacts::write_all(&mut writer, &files).map_err(export)?;
    Ok(RunOutput {
        report,
        files: writer.files().to_vec(),
    })
}

/// The full pipeline, ingest through exports.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunOutput, PipelineError> {
    run(cfg, Target::Report)
}
