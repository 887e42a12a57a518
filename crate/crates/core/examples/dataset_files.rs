//! Writes a synthetic corpus, reads it back and forecasts each series.
//!
//! `cargo run --example dataset_files`

use optheta::dataset::{load_dataset, save_dataset, synth_dataset, SynthConfig};
use optheta::{run_method, smape, MethodSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = synth_dataset(&SynthConfig {
        seed: 11,
        counts: [2, 2, 2, 1],
    });
    let path = std::env::temp_dir().join("optheta_example.csv");
    save_dataset(&data, &path)?;
    let loaded = load_dataset(&path)?;
    assert_eq!(loaded, data);
    println!(
        "round-tripped {} series through {}",
        loaded.len(),
        path.display()
    );

    let theta = MethodSpec::classic_theta();
    for e in &loaded.entries {
        let r = run_method(&e.series, e.horizon, &theta)?;
        println!(
            "{:<6} {:<9} n={:<3} h={:<2} sMAPE {:6.2}",
            e.series.id(),
            e.group,
            e.series.len(),
            e.horizon.get(),
            smape(&e.actuals, &r.forecasts)?
        );
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
