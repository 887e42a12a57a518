//! Classic Theta: half linear trend, half SES on the theta = 2 line.
//!
//! `cargo run --example classic_theta`

use optheta::{run_classic_theta, Horizon, TimeSeries};

fn main() -> optheta::Result<()> {
    // quarterly series with a strong seasonal swing
    let pattern = [0.75, 1.05, 1.35, 0.85];
    let y: Vec<f64> = (0..24)
        .map(|i| (300.0 + 4.0 * i as f64 + 9.0 * (i as f64 * 0.7).sin()) * pattern[i % 4])
        .collect();
    let series = TimeSeries::new("sales", y, 4)?;
    let result = run_classic_theta(&series, Horizon::new(8)?)?;
    println!("seasonally adjusted: {}", result.seasonal);
    for (k, f) in result.forecasts.iter().enumerate() {
        println!("h={:<2} {:8.2}", k + 1, f);
    }
    Ok(())
}
