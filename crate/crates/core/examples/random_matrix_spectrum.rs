//! Spectrum of an uncorrelated panel against the Marchenko–Pastur law, and
//! of a shuffled surrogate of a correlated one.

use corrnet::spectral::{
    bulk_indices, correlation_matrix, eigendecompose, eigenvector_component_sample, mp_density,
    rmt_bounds, shuffle_surrogate,
};
use corrnet::stats::{histogram, ks_statistic_normal};
use corrnet::synthetic::{standard_normal_panel, FactorModel};

fn main() -> corrnet::Result<()> {
    let (n, t) = (74, 6034);
    let bounds = rmt_bounds(n, t)?;
    println!(
        "N = {n}, T = {t}: q = {:.2}, lambda in [{:.3}, {:.3}]",
        bounds.q, bounds.lambda_min, bounds.lambda_max
    );

    let noise = standard_normal_panel(n, t, 3)?;
    let sd = eigendecompose(&correlation_matrix(&noise)?)?;
    let inside = sd
        .eigenvalues()
        .iter()
        .filter(|&&l| bounds.contains(l))
        .count();
    println!(
        "pure noise: {inside}/{n} eigenvalues inside, {} Jacobi sweeps",
        sd.sweeps()
    );

    let h = histogram(sd.eigenvalues(), 12);
    println!("  center   empirical   MP");
    for (c, d) in &h.bins {
        println!("  {c:6.3}   {d:9.3}   {:6.3}", mp_density(*c, bounds.q));
    }

    let model = FactorModel::two_groups();
    let rp = model.sample(9)?;
    let bounds = rmt_bounds(rp.n_assets(), rp.n_periods())?;
    let sd = eigendecompose(&correlation_matrix(&rp)?)?;
    println!(
        "\nplanted model: lambda_0 = {:.2}, then {:.3?}, upper bound {:.3}",
        sd.eigenvalues()[0],
        &sd.eigenvalues()[1..4],
        bounds.lambda_max
    );
    // The strong market mode drains variance from the rest of the spectrum,
    // pushing most of it below lambda_min.
    let below = sd
        .eigenvalues()
        .iter()
        .filter(|&&l| l < bounds.lambda_min)
        .count();
    println!("  {below} eigenvalues below the lower bound");

    let noise_sd = eigendecompose(&correlation_matrix(&noise)?)?;
    let noise_bounds = rmt_bounds(n, t)?;
    let bulk = eigenvector_component_sample(&noise_sd, &bulk_indices(&noise_sd, &noise_bounds))?;
    println!(
        "  noise-panel bulk eigenvector components: KS vs N(0,1) = {:.4}",
        ks_statistic_normal(&bulk)
    );

    let shuffled = shuffle_surrogate(&rp, 42);
    let sur = eigendecompose(&correlation_matrix(&shuffled)?)?;
    println!(
        "  shuffled surrogate: largest eigenvalue {:.3}, {} of {} inside",
        sur.eigenvalues()[0],
        sur.eigenvalues()
            .iter()
            .filter(|&&l| bounds.contains(l))
            .count(),
        sur.size()
    );
    Ok(())
}
