//! Aligning a ragged price table and turning it into normalized returns.

use corrnet::market::{
    compute_log_returns, normalize_returns, parse_price_panel, IngestOptions, ReturnOptions,
    Sampling,
};

const META: &str = "\
index,code,name,market_class,region
1,EUR,Euro,developed,Europe
2,ZAR,South African rand,emerging,Africa
3,KES,Kenyan shilling,frontier,Africa
";

// KES is missing on two consecutive days and on a third day that is
// forward-filled; ZAR has one gap.
const PRICES: &str = "\
date,ZAR,EUR,KES
2010-01-04,7.40,0.694,75.6
2010-01-05,7.35,0.697,75.7
2010-01-06,NA,0.695,75.5
2010-01-07,7.42,0.699,
2010-01-08,7.38,0.701,75.9
2010-01-11,7.31,0.693,76.1
2010-01-12,7.33,0.690,76.0
";

fn main() -> corrnet::Result<()> {
    let panel = parse_price_panel(PRICES, META, &IngestOptions { fill_horizon: 1 })?;
    let codes: Vec<&str> = panel.assets().iter().map(|a| a.code.as_str()).collect();
    println!("assets (metadata order): {codes:?}");
    println!(
        "dates kept: {}, dropped: {:?}",
        panel.n_dates(),
        panel.dropped_dates()
    );

    let raw = compute_log_returns(&panel, &ReturnOptions::default())?;
    let r = normalize_returns(&raw)?;
    for (a, s) in r.assets().iter().zip(raw.sigma()) {
        println!("{:>4}  sigma = {s:.6}", a.code);
    }
    println!("normalized returns:\n{:.3}", r.returns());

    let weekly = compute_log_returns(
        &panel,
        &ReturnOptions {
            delta: 2,
            sampling: Sampling::NonOverlapping,
            ..ReturnOptions::default()
        },
    )?;
    println!(
        "two-step non-overlapping returns end on {:?}",
        weekly.dates()
    );
    Ok(())
}
