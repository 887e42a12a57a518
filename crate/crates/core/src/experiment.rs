//! Batch evaluation over a dataset.
//!
//! Series run in parallel on a bounded pool; results are merged in dataset
//! order, so the aggregate output does not depend on the worker count.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use rayon::prelude::*;

use crate::dataset::{Dataset, DatasetEntry};
use crate::error::{Result, ThetaError};
use crate::groe::{Approach, CostFn, ThetaGrid};
use crate::metrics::{mase, smape, EvaluationTable, SeriesScore};
use crate::pipeline::{run_method, ForecastResult, MethodSpec};
use crate::smoothing::{Family, ForecasterSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub methods: Vec<MethodSpec>,
    /// Worker threads; 0 means one per available core.
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn new(methods: Vec<MethodSpec>) -> Self {
        Self {
            methods,
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// A (series, method) cell with no forecast.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub series_id: String,
    pub method: String,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub table: EvaluationTable,
    /// Dataset order, then method order.
    pub scores: Vec<SeriesScore>,
    pub forecasts: Vec<ForecastResult>,
    pub failures: Vec<Failure>,
}

enum Cell {
    Scored(ForecastResult, SeriesScore),
    Failed(Failure),
}

fn evaluate_entry(entry: &DatasetEntry, methods: &[MethodSpec]) -> Vec<Cell> {
    let id = entry.series.id();
    methods
        .iter()
        .map(|spec| {
            let fail = |error: String| {
                Cell::Failed(Failure {
                    series_id: id.to_string(),
                    method: spec.name.clone(),
                    error,
                })
            };
            let result = match run_method(&entry.series, entry.horizon, spec) {
                Ok(r) => r,
                Err(e) => return fail(e.to_string()),
            };
            let s = match smape(&entry.actuals, &result.forecasts) {
                Ok(s) => s,
                Err(e) => return fail(e.to_string()),
            };
            let m = mase(entry.series.values(), &entry.actuals, &result.forecasts).ok();
            let score = SeriesScore {
                series_id: id.to_string(),
                method: spec.name.clone(),
                group: entry.group,
                smape: s,
                mase: m,
                theta_hat: result.chosen_theta,
            };
            Cell::Scored(result, score)
        })
        .collect()
}

/// Forecasts and scores every (series, method) pair. Per-series failures are
/// recorded, never fatal.
pub fn run_experiment(data: &Dataset, config: &ExperimentConfig) -> Result<ExperimentOutput> {
    if config.methods.is_empty() {
        return Err(ThetaError::Input(
            "experiment needs at least one method".into(),
        ));
    }
    let mut names: Vec<&str> = config.methods.iter().map(|m| m.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(ThetaError::Input(format!(
            "duplicate method name '{}'",
            w[0]
        )));
    }
    if let Some(e) = data
        .entries
        .iter()
        .find(|e| e.actuals.len() != e.horizon.get())
    {
        return Err(ThetaError::Input(format!(
            "series {} has {} held-out values for horizon {}",
            e.series.id(),
            e.actuals.len(),
            e.horizon.get()
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ThetaError::Input(format!("cannot start worker pool: {e}")))?;
    let cells: Vec<Vec<Cell>> = pool.install(|| {
        data.entries
            .par_iter()
            .map(|entry| evaluate_entry(entry, &config.methods))
            .collect()
    });

    let k = config.methods.len();
    let mut failed = vec![0usize; k];
    let mut elapsed = vec![Duration::ZERO; k];
    let mut scores = Vec::new();
    let mut forecasts = Vec::new();
    let mut failures = Vec::new();
    for row in cells {
        for (i, cell) in row.into_iter().enumerate() {
            match cell {
                Cell::Scored(result, score) => {
                    elapsed[i] += result.elapsed;
                    forecasts.push(result);
                    scores.push(score);
                }
                Cell::Failed(f) => {
                    failed[i] += 1;
                    failures.push(f);
                }
            }
        }
    }
    let names: Vec<String> = config.methods.iter().map(|m| m.name.clone()).collect();
    let table = EvaluationTable::build(&names, &scores, &failed, &elapsed, data.len());
    Ok(ExperimentOutput {
        table,
        scores,
        forecasts,
        failures,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl ExperimentOutput {
    /// Long-format per-series scores: `id,method,smape,mase,theta_hat`.
    pub fn scores_csv(&self) -> String {
        let mut out = String::from("id,method,smape,mase,theta_hat\n");
        for s in &self.scores {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.series_id,
                s.method,
                s.smape,
                opt(s.mase),
                opt(s.theta_hat)
            ));
        }
        out
    }

    /// Writes `aggregate.csv`, `scores.csv`, `forecasts.csv` and, when any
    /// cell failed, `failures.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("aggregate.csv"), self.table.to_csv(true))?;
        fs::write(dir.join("scores.csv"), self.scores_csv())?;
        let mut f = io::BufWriter::new(fs::File::create(dir.join("forecasts.csv"))?);
        write_forecasts(&mut f, &self.forecasts)?;
        f.flush()?;
        if !self.failures.is_empty() {
            let mut out = String::from("id,method,error\n");
            for fl in &self.failures {
                out.push_str(&format!(
                    "{},{},\"{}\"\n",
                    fl.series_id,
                    fl.method,
                    fl.error.replace('"', "'")
                ));
            }
            fs::write(dir.join("failures.csv"), out)?;
        }
        Ok(())
    }
}

/// `id,method,theta_hat,seasonal,fallback,forecasts...` rows.
pub fn write_forecasts<W: Write>(w: &mut W, results: &[ForecastResult]) -> io::Result<()> {
    writeln!(w, "id,method,theta_hat,seasonal,fallback,forecasts")?;
    for r in results {
        write!(
            w,
            "{},{},{},{},{}",
            r.series_id,
            r.method,
            opt(r.chosen_theta),
            r.seasonal,
            r.fallback
        )?;
        for v in &r.forecasts {
            write!(w, ",{v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Methods in table order for the tokens `theta`, `otm`, or any smoothing
/// family name. `otm` expands to one method per approach.
pub fn build_methods(
    tokens: &[String],
    approaches: &[Approach],
    cost: CostFn,
    extrapolator: Family,
    grid: Option<&ThetaGrid>,
) -> Result<Vec<MethodSpec>> {
    let mut methods = Vec::new();
    for token in tokens {
        match token.trim().to_ascii_lowercase().as_str() {
            "theta" => methods.push(MethodSpec::classic_theta()),
            "otm" => {
                if approaches.is_empty() {
                    return Err(ThetaError::Input("otm needs at least one approach".into()));
                }
                if !matches!(extrapolator, Family::Ses | Family::Holt | Family::Damped) {
                    return Err(ThetaError::Input(format!(
                        "{extrapolator} cannot extrapolate a theta line (use ses, holt or damped)"
                    )));
                }
                for &a in approaches {
                    let mut m = MethodSpec::otm(a, cost, ForecasterSpec::new(extrapolator));
                    if let Some(g) = grid {
                        m = m.with_grid(g.clone());
                    }
                    methods.push(m);
                }
            }
            other => {
                let family: Family = other.parse()?;
                methods.push(MethodSpec::benchmark(ForecasterSpec::new(family)));
            }
        }
    }
    if methods.is_empty() {
        return Err(ThetaError::Input("no methods selected".into()));
    }
    Ok(methods)
}
