//! The exponential smoothing and naive benchmark family.
//!
//! `cargo run --example benchmarks`

use optheta::smoothing::fit;
use optheta::{run_benchmark, ForecasterSpec, Horizon, MethodSpec, TimeSeries};

fn main() -> optheta::Result<()> {
    let y: Vec<f64> = (1..=48)
        .map(|t| (200.0 + 3.0 * t as f64) * [0.85, 1.05, 1.25, 0.85][t % 4])
        .collect();
    let series = TimeSeries::new("demand", y, 4)?;
    let h = Horizon::new(8)?;

    for spec in [
        ForecasterSpec::naive(),
        ForecasterSpec::naive2(),
        ForecasterSpec::ses(),
        ForecasterSpec::holt(),
        ForecasterSpec::damped(),
        ForecasterSpec::holt_winters(),
        ForecasterSpec::seasonal_damped(),
    ] {
        let r = run_benchmark(&series, h, &MethodSpec::benchmark(spec))?;
        let fc: Vec<String> = r.forecasts.iter().map(|v| format!("{v:7.1}")).collect();
        println!("{:<24}{}", r.method, fc.join(""));
    }

    let fitted = fit(&ForecasterSpec::damped(), &series)?;
    let p = fitted.params();
    println!(
        "damped fit: alpha {:.2} beta {:.2} phi {:.2} sse {:.1}",
        p.alpha,
        p.beta,
        p.phi,
        fitted.sse()
    );
    let pinned = fit(&ForecasterSpec::ses().with_alpha(0.2), &series)?;
    println!("ses with alpha pinned at 0.2: level {:.2}", pinned.level());
    Ok(())
}
