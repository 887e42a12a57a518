//! Splits a series into two theta lines and rebuilds it exactly.
//!
//! `cargo run --example theta_decomposition`

use optheta::{combination_weight, fit_linear_trend, recompose, theta_line, TimeSeries};

fn main() -> optheta::Result<()> {
    let y = vec![
        112.0, 118.0, 132.0, 129.0, 121.0, 135.0, 148.0, 148.0, 136.0, 119.0, 104.0, 118.0,
    ];
    let series = TimeSeries::new("airline", y, 1)?;
    let fit = fit_linear_trend(&series)?;
    println!("trend: {:.3} + {:.3} t", fit.intercept, fit.slope);

    for (t1, t2) in [(0.0, 2.0), (0.0, 3.0), (-1.0, 2.5), (1.0, 1.0)] {
        let w = combination_weight(t1, t2)?;
        let z1 = theta_line(&series, &fit, t1);
        let z2 = theta_line(&series, &fit, t2);
        let back = recompose(&z1, &z2, w)?;
        let err = back
            .iter()
            .zip(series.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("theta ({t1:>4}, {t2:>4})  omega = {w:.4}  max |recomposed - y| = {err:.1e}");
    }

    let z2 = theta_line(&series, &fit, 2.0);
    println!("Z(2): {:.1?}", z2.values);
    Ok(())
}
