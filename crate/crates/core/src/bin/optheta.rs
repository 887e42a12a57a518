use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use optheta::dataset::{load_dataset, load_series, save_dataset, synth_dataset, SynthConfig};
use optheta::experiment::{build_methods, run_experiment, write_forecasts, ExperimentConfig};
use optheta::{run_method, Approach, CostFn, Family, ThetaGrid};

#[derive(Parser)]
#[command(
    name = "optheta",
    version,
    about = "Optimised Theta forecasting and M3-style evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Forecast every series in a file (dataset format, actuals optional).
    Forecast {
        input: PathBuf,
        /// Method token: otm, theta, or a smoothing family.
        #[arg(long, default_value = "otm")]
        method: String,
        #[command(flatten)]
        otm: OtmArgs,
        /// Output CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score methods on a dataset with held-out actuals.
    Evaluate {
        dataset: PathBuf,
        /// Comma-separated method tokens: theta, otm, naive, naive2, ses,
        /// holt, damped, holt-winters, seasonal-damped.
        #[arg(long, value_delimiter = ',', default_value = "theta,otm")]
        methods: Vec<String>,
        #[command(flatten)]
        otm: OtmArgs,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Write a seeded synthetic corpus in dataset format.
    Synth {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        series: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct OtmArgs {
    /// Comma-separated GROE approaches a..h.
    #[arg(long, value_delimiter = ',', default_value = "a,b,c,d,e,f,g,h")]
    approaches: Vec<String>,
    /// Validation cost: se, ae or sape.
    #[arg(long, default_value = "se")]
    cost: String,
    /// Theta-line extrapolator: ses, holt or damped.
    #[arg(long, default_value = "ses")]
    extrapolator: String,
    /// Comma-separated theta candidates.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn methods(tokens: &[String], otm: &OtmArgs) -> AnyResult<Vec<optheta::MethodSpec>> {
    let approaches = otm
        .approaches
        .iter()
        .map(|a| a.parse::<Approach>())
        .collect::<Result<Vec<_>, _>>()?;
    let cost: CostFn = otm.cost.parse()?;
    let extrapolator: Family = otm.extrapolator.parse()?;
    let grid = otm.grid.clone().map(ThetaGrid::new).transpose()?;
    Ok(build_methods(
        tokens,
        &approaches,
        cost,
        extrapolator,
        grid.as_ref(),
    )?)
}

fn run(cli: Cli) -> AnyResult<()> {
    match cli.command {
        Command::Forecast {
            input,
            method,
            otm,
            out,
        } => {
            let specs = methods(&[method], &otm)?;
            let data = load_series(&input)?;
            let mut results = Vec::new();
            for entry in &data.entries {
                for spec in &specs {
                    match run_method(&entry.series, entry.horizon, spec) {
                        Ok(r) => results.push(r),
                        Err(e) => eprintln!("{} {}: {e}", entry.series.id(), spec.name),
                    }
                }
            }
            let mut w: Box<dyn Write> = match out {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            write_forecasts(&mut w, &results)?;
            w.flush()?;
        }
        Command::Evaluate {
            dataset,
            methods: tokens,
            otm,
            workers,
            out,
        } => {
            let specs = methods(&tokens, &otm)?;
            let data = load_dataset(&dataset)?;
            eprintln!("{} series, {} methods", data.len(), specs.len());
            let config = ExperimentConfig::new(specs).with_workers(workers);
            let output = run_experiment(&data, &config)?;
            output.write(&out)?;
            for f in &output.failures {
                eprintln!("failed: {} {}: {}", f.series_id, f.method, f.error);
            }
            print!("{}", output.table.render());
            eprintln!("results written to {}", out.display());
        }
        Command::Synth { seed, series, out } => {
            let data = synth_dataset(&SynthConfig::proportional(seed, series));
            save_dataset(&data, &out)?;
            eprintln!("wrote {} series to {}", data.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
