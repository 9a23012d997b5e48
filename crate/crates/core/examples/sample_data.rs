//! Writes a synthetic price table and metadata file that the `corrnet`
//! binary can read.
//!
//!     cargo run --example sample_data -- data/
//!     cargo run --bin corrnet -- report --prices data/prices.csv --meta data/meta.csv --n-g auto

use chrono::NaiveDate;
use corrnet::synthetic::{write_inputs, FactorModel};

fn main() -> corrnet::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sample_data".into());
    let model = FactorModel {
        n_periods: 2000,
        ..FactorModel::two_groups()
    };
    let start = NaiveDate::from_ymd_opt(2000, 1, 3).unwrap();
    let panel = model.sample_prices(7, 0.006, start)?;
    let (prices, meta) = write_inputs(&panel, dir.as_ref())?;
    println!(
        "{} assets x {} dates\n  {}\n  {}",
        panel.n_assets(),
        panel.n_dates(),
        prices.display(),
        meta.display()
    );
    Ok(())
}
