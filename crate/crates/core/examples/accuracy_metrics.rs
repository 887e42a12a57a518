//! sMAPE, MASE and average ranks.
//!
//! `cargo run --example accuracy_metrics`

use optheta::{average_ranks, mase, smape};

fn main() -> optheta::Result<()> {
    let insample = [10.0, 12.0, 11.0, 14.0, 13.0, 15.0];
    let actuals = [16.0, 15.0, 17.0];
    let forecasts = [15.0, 15.5, 15.5];
    println!("sMAPE {:.3}%", smape(&actuals, &forecasts)?);
    println!("MASE  {:.3}", mase(&insample, &actuals, &forecasts)?);
    match mase(&[4.0, 4.0, 4.0], &[4.0], &[5.0]) {
        Ok(v) => println!("constant in-sample MASE {v}"),
        Err(e) => println!("constant in-sample: {e}"),
    }

    // rows are methods, columns are series
    let errors = vec![
        vec![10.0, 4.0, 7.0, 3.0],
        vec![12.0, 4.0, 6.0, 5.0],
        vec![11.0, 9.0, 8.0, 1.0],
    ];
    for (m, r) in average_ranks(&errors)?.iter().enumerate() {
        println!("method {m}: average rank {r:.3}");
    }
    Ok(())
}
