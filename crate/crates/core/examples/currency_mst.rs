//! Minimum spanning tree over correlation distances, printed in Pajek form.

use corrnet::network::{cluster_report, mantegna_distance, minimum_spanning_tree};
use corrnet::report::pajek_string;
use corrnet::spectral::correlation_matrix;
use corrnet::synthetic::FactorModel;

fn main() -> corrnet::Result<()> {
    let model = FactorModel {
        n_assets: 12,
        n_periods: 1500,
        groups: vec![(0..4).collect(), (4..8).collect()],
        ..FactorModel::two_groups()
    };
    let rp = model.sample(5)?;
    let c = correlation_matrix(&rp)?;
    let d = mantegna_distance(&c)?;
    let tree = minimum_spanning_tree(&d, rp.assets())?;

    println!("total length {:.4}", tree.total_weight());
    let report = cluster_report(&tree, 1.5);
    for (v, deg) in &report.hubs {
        println!("hub {} with degree {deg}", tree.nodes[*v].code);
    }
    print!("{}", pajek_string(&tree));
    Ok(())
}
