//! Optimised Theta: theta chosen from a grid by rolling-origin validation.
//!
//! `cargo run --release --example optimised_theta`

use optheta::dataset::{synth_dataset, SynthConfig};
use optheta::groe::theta_losses;
use optheta::{
    approach_config, run_otm, smape, Approach, CostFn, ForecasterSpec, MethodSpec, ThetaGrid,
};

fn main() -> optheta::Result<()> {
    let data = synth_dataset(&SynthConfig {
        seed: 31,
        counts: [6, 0, 0, 0],
    });
    let grid = ThetaGrid::default();

    let first = &data.entries[0];
    let config = approach_config(Approach::D, first.series.len(), first.horizon)?;
    println!("{} with approach (d): {config:?}", first.series.id());
    for (theta, loss) in theta_losses(
        &first.series,
        &grid,
        &config,
        CostFn::Se,
        &ForecasterSpec::ses(),
    ) {
        println!("  theta {theta:.1}  loss {:.4e}", loss?);
    }

    print!("\nchosen theta  ");
    for a in Approach::ALL {
        print!("{a:>6}");
    }
    println!("   sMAPE(d)");
    for e in &data.entries {
        print!("{:<6} n={:<3} ", e.series.id(), e.series.len());
        let mut smape_d = f64::NAN;
        for a in Approach::ALL {
            let r = run_otm(
                &e.series,
                e.horizon,
                &MethodSpec::otm(a, CostFn::Se, ForecasterSpec::ses()),
            )?;
            if a == Approach::D {
                smape_d = smape(&e.actuals, &r.forecasts)?;
            }
            print!("{:>6.1}", r.chosen_theta.unwrap_or(f64::NAN));
        }
        println!("   {smape_d:8.2}");
    }

    let holt = MethodSpec::otm(Approach::D, CostFn::Ae, ForecasterSpec::holt());
    let r = run_otm(&first.series, first.horizon, &holt)?;
    println!(
        "\n{} on {}: theta = {:.1}",
        r.method,
        first.series.id(),
        r.chosen_theta.unwrap_or(f64::NAN)
    );
    Ok(())
}
