//! Hill estimates of power-law tails and the survival curves behind them.

use corrnet::synthetic::{pareto_samples, symmetric_pareto_samples};
use corrnet::tails::{fit_tail_exponent, tail_survival, Side};

fn main() -> corrnet::Result<()> {
    for alpha in [2.0, 3.0, 4.0] {
        let xs = pareto_samples(6000, alpha, 11);
        let fit = fit_tail_exponent(&xs, Side::Positive, 0.10)?;
        println!(
            "alpha = {alpha}: estimate {:.3} from k = {} points above {:.3}",
            fit.alpha, fit.k, fit.x_min
        );
    }

    let returns = symmetric_pareto_samples(6000, 3.0, 5);
    for side in [Side::Positive, Side::Negative] {
        let fit = fit_tail_exponent(&returns, side, 0.05)?;
        println!("{side:?} tail: alpha = {:.3}", fit.alpha);
    }

    // Log-log survival points; a straight line of slope -alpha in the tail.
    let ccdf: Vec<_> = tail_survival(&returns, Side::Positive)?
        .into_iter()
        .filter(|&(x, _)| x >= 1.0)
        .collect();
    for &(x, p) in ccdf.iter().step_by(ccdf.len() / 8) {
        println!("  ln x = {:6.3}   ln P = {:7.3}", x.ln(), p.ln());
    }

    match fit_tail_exponent(&returns[..50], Side::Positive, 0.10) {
        Err(e) => println!("short sample: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
