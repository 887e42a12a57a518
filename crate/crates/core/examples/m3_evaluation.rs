//! Evaluates classic Theta and the eight OTM approaches on a corpus in the
//! dataset format. Without an argument a seeded synthetic corpus is used.
//!
//! `cargo run --release --example m3_evaluation -- path/to/m3.csv results/`

use std::path::PathBuf;
use std::time::Instant;

use optheta::dataset::{load_dataset, synth_dataset, SynthConfig};
use optheta::{run_experiment, Approach, CostFn, ExperimentConfig, ForecasterSpec, MethodSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let data = match args.next() {
        Some(path) => load_dataset(path)?,
        None => synth_dataset(&SynthConfig::proportional(2024, 300)),
    };
    let counts = data.group_counts();
    println!("{} series (Y/Q/M/O = {counts:?})", data.len());

    let mut methods = vec![MethodSpec::classic_theta()];
    for a in Approach::ALL {
        methods.push(MethodSpec::otm(a, CostFn::Se, ForecasterSpec::ses()));
    }
    methods.push(MethodSpec::benchmark(ForecasterSpec::naive2()));
    methods.push(MethodSpec::benchmark(ForecasterSpec::ses()));

    let start = Instant::now();
    let out = run_experiment(&data, &ExperimentConfig::new(methods))?;
    println!("{}", out.table.render());
    println!(
        "wall time {:.1} s, {} failures",
        start.elapsed().as_secs_f64(),
        out.failures.len()
    );

    if let Some(dir) = args.next().map(PathBuf::from) {
        out.write(&dir)?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
