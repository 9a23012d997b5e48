//! Recovering planted groups from a threshold network on the group
//! correlations.

use corrnet::modes::{decompose_modes, select_ng};
use corrnet::network::{
    cluster_report, default_threshold_grid, threshold_network, threshold_sweep,
};
use corrnet::spectral::{correlation_matrix, eigendecompose, rmt_bounds};
use corrnet::synthetic::FactorModel;

fn main() -> corrnet::Result<()> {
    let model = FactorModel::two_groups();
    let rp = model.sample(13)?;
    let sd = eigendecompose(&correlation_matrix(&rp)?)?;
    let n_g = select_ng(&sd, &rmt_bounds(rp.n_assets(), rp.n_periods())?);
    let c_group = decompose_modes(&sd, n_g)?.c_group;

    let grid = default_threshold_grid(&c_group, 100);
    let sweep = threshold_sweep(&c_group, &grid, rp.assets())?;
    println!("recommended threshold {:.4}", sweep.recommended);
    for p in sweep.points.iter().step_by(10) {
        println!(
            "  c_th {:7.4}: {:4} edges, components {:?}",
            p.c_th, p.edges, p.sizes
        );
    }

    let g = threshold_network(&c_group, sweep.recommended, rp.assets())?;
    let report = cluster_report(&g, 2.0);
    for (k, comp) in report.components.iter().enumerate() {
        let codes: Vec<&str> = comp.iter().map(|&v| g.nodes[v].code.as_str()).collect();
        println!("cluster {k}: {}", codes.join(" "));
    }
    println!("isolated: {}", report.isolated.len());
    Ok(())
}
