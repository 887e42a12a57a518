//! Seasonality test and classical multiplicative decomposition.
//!
//! `cargo run --example seasonal_adjustment`

use optheta::seasonal::autocorrelations;
use optheta::{deseasonalize, is_seasonal, reseasonalize, seasonal_indices, TimeSeries};

fn main() -> optheta::Result<()> {
    let pattern = [0.7, 0.9, 1.3, 1.1];
    let y: Vec<f64> = (0..32)
        .map(|i| (100.0 + 2.0 * i as f64) * pattern[i % 4])
        .collect();
    let series = TimeSeries::new("q", y, 4)?;

    let acf = autocorrelations(series.values(), 4).unwrap_or_default();
    println!("acf r1..r4: {:.3?}", acf);
    println!("seasonal at period 4: {}", is_seasonal(&series));

    let idx = seasonal_indices(&series)?;
    println!("indices: {:.4?}", idx.as_slice());
    let adjusted = deseasonalize(&series, &idx)?;
    println!("adjusted head: {:.2?}", &adjusted.values()[..8]);

    // continue the pattern for four flat forecasts starting at t = n + 1
    let flat = vec![adjusted.last().unwrap_or(0.0); 4];
    println!(
        "reseasonalized: {:.2?}",
        reseasonalize(&flat, &idx, series.len() + 1)
    );
    Ok(())
}
