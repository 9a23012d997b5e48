//! End-to-end run: synthetic inputs on disk, every stage, every artifact.

use chrono::NaiveDate;
use corrnet::report::{run_pipeline, NgChoice, PipelineConfig};
use corrnet::synthetic::{write_inputs, FactorModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "full_report".into());
    let root = std::path::Path::new(&root);
    let model = FactorModel {
        n_periods: 1500,
        ..FactorModel::two_groups()
    };
    let panel = model.sample_prices(3, 0.005, NaiveDate::from_ymd_opt(2001, 1, 1).unwrap())?;
    let (prices, meta) = write_inputs(&panel, &root.join("input"))?;

    let mut cfg = PipelineConfig::new(prices, meta, root.join("out"));
    cfg.n_g = NgChoice::Auto;
    cfg.seed = 2024;
    let out = run_pipeline(&cfg)?;

    let r = &out.report;
    if let Some(m) = &r.modes {
        println!("n_g = {} (auto {})", m.n_g, m.n_g_auto);
    }
    if let Some(s) = &r.spectrum {
        println!(
            "{} eigenvalues above {:.3}; surrogates inside the bulk: {:.1}%",
            s.above_bounds,
            s.bounds.lambda_max,
            100.0 * s.surrogates.fraction_within_margin
        );
    }
    if let Some(t) = &r.threshold {
        println!(
            "threshold {:.4} ({}), {} clusters",
            t.c_th,
            t.chosen_by,
            t.graph.components.len()
        );
    }
    for f in &out.files {
        println!("  {}", f.display());
    }
    Ok(())
}
