use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corrnet::market::{Sampling, VolatilityConvention};
use corrnet::report::{
    run, NgChoice, PipelineConfig, Target, ThresholdChoice, DEFAULT_HISTOGRAM_BINS, DEFAULT_SEED,
    DEFAULT_SURROGATES, DEFAULT_SWEEP_STEPS,
};

#[derive(Parser)]
#[command(
    name = "corrnet",
    version,
    about = "Correlation networks from asset price panels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Align the price table with its metadata
    Ingest(Common),
    /// Normalized log-returns and volatilities
    Returns(Common),
    /// Tail exponents and survival curves
    Tails(Common),
    /// Correlation spectrum against random-matrix bounds and surrogates
    Spectrum(Common),
    /// Global / group / random split of the correlation matrix
    Decompose(Common),
    /// Minimum spanning tree over correlation distances
    Mst(Common),
    /// Threshold network on the group correlations
    Threshnet(Common),
    /// Full pipeline
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Price table: `date` column followed by one column per asset code
    #[arg(long)]
    prices: PathBuf,
    /// Metadata table: index,code,name,market_class,region
    #[arg(long)]
    meta: PathBuf,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of group modes, or `auto`
    #[arg(long, default_value = "6")]
    n_g: NgChoice,
    /// Group-network threshold, or `auto` to pick one by sweep
    #[arg(long, default_value = "auto")]
    c_th: ThresholdChoice,
    #[arg(long, default_value_t = 0.10)]
    tail_fraction: f64,
    /// Return horizon in sampling steps
    #[arg(long, default_value_t = 1)]
    delta: usize,
    /// Use non-overlapping return windows instead of sliding ones
    #[arg(long)]
    non_overlapping: bool,
    /// Use the sample (n - 1) volatility instead of the population one
    #[arg(long)]
    sample_volatility: bool,
    #[arg(long, default_value_t = 5)]
    fill_horizon: usize,
    #[arg(long, default_value_t = DEFAULT_SURROGATES)]
    surrogates: usize,
    #[arg(long, default_value_t = 2.0)]
    hub_sigma: f64,
    #[arg(long, default_value_t = DEFAULT_HISTOGRAM_BINS)]
    bins: usize,
    #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
    sweep_steps: usize,
}

impl Common {
    fn config(self) -> PipelineConfig {
        let mut cfg = PipelineConfig::new(self.prices, self.meta, self.out_dir);
        cfg.seed = self.seed;
        cfg.n_g = self.n_g;
        cfg.c_th = self.c_th;
        cfg.tail_fraction = self.tail_fraction;
        cfg.delta = self.delta;
        if self.non_overlapping {
            cfg.sampling = Sampling::NonOverlapping;
        }
        if self.sample_volatility {
            cfg.volatility = VolatilityConvention::Sample;
        }
        cfg.fill_horizon = self.fill_horizon;
        cfg.surrogates = self.surrogates;
        cfg.hub_sigma = self.hub_sigma;
        cfg.histogram_bins = self.bins;
        cfg.sweep_steps = self.sweep_steps;
        cfg
    }
}

fn main() -> ExitCode {
    let (target, common) = match Cli::parse().command {
        Command::Ingest(c) => (Target::Ingest, c),
        Command::Returns(c) => (Target::Returns, c),
        Command::Tails(c) => (Target::Tails, c),
        Command::Spectrum(c) => (Target::Spectrum, c),
        Command::Decompose(c) => (Target::Decompose, c),
        Command::Mst(c) => (Target::Mst, c),
        Command::Threshnet(c) => (Target::Threshnet, c),
        Command::Report(c) => (Target::Report, c),
    };
    let cfg = common.config();
    match run(&cfg, target) {
        Ok(out) => {
            println!(
                "wrote {} files to {}",
                out.files.len(),
                cfg.out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
