//! Splitting a correlation matrix into market, group and noise parts.

use corrnet::modes::{decompose_modes, element_histogram, frobenius_norm, select_ng};
use corrnet::spectral::{correlation_matrix, eigendecompose, rmt_bounds};
use corrnet::synthetic::FactorModel;

fn main() -> corrnet::Result<()> {
    let model = FactorModel::two_groups();
    let rp = model.sample(21)?;
    let c = correlation_matrix(&rp)?;
    let sd = eigendecompose(&c)?;
    let bounds = rmt_bounds(rp.n_assets(), rp.n_periods())?;

    let n_g = select_ng(&sd, &bounds);
    println!(
        "modes above {:.3} besides the leading one: {n_g}",
        bounds.lambda_max
    );

    let d = decompose_modes(&sd, n_g)?;
    println!("|C|        = {:.3}", frobenius_norm(c.entries()));
    println!("|C_global| = {:.3}", frobenius_norm(&d.c_global));
    println!("|C_group|  = {:.3}", frobenius_norm(&d.c_group));
    println!("|C_random| = {:.3}", frobenius_norm(&d.c_random));

    // Group correlations are positive within a planted group and small elsewhere.
    let g = &d.c_group;
    println!("C_group[0,1] = {:.3} (same group)", g[[0, 1]]);
    println!("C_group[0,15] = {:.3} (different groups)", g[[0, 15]]);

    let h = element_histogram(&d.c_group, 20)?;
    println!("off-diagonal C_group histogram:");
    for (center, density) in h.bins.iter().filter(|b| b.1 > 0.0) {
        println!(
            "  {center:7.3}  {}",
            "#".repeat((density * 2.0).round() as usize)
        );
    }
    Ok(())
}
