//! Dataset files and synthetic corpora.
//!
//! A dataset is a delimited text file with a header row and one series per
//! row:
//!
//! ```text
//! id,group,period,h,n,values
//! N0001,Yearly,1,6,14,940.66,1084.86,...   (n in-sample values, then h actuals)
//! ```
//!
//! `group` is one of Yearly, Quarterly, Monthly, Other. An empty `period` or
//! `h` takes the group default (1/6, 4/8, 12/18, 1/8).

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::series::{Horizon, TimeSeries};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("dataset has no series")]
    Empty,
}

/// Frequency group of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrequencyGroup {
    Yearly,
    Quarterly,
    Monthly,
    Other,
}

impl FrequencyGroup {
    pub const ALL: [FrequencyGroup; 4] = [
        FrequencyGroup::Yearly,
        FrequencyGroup::Quarterly,
        FrequencyGroup::Monthly,
        FrequencyGroup::Other,
    ];

    pub fn default_period(self) -> usize {
        match self {
            FrequencyGroup::Yearly | FrequencyGroup::Other => 1,
            FrequencyGroup::Quarterly => 4,
            FrequencyGroup::Monthly => 12,
        }
    }

    pub fn default_horizon(self) -> usize {
        match self {
            FrequencyGroup::Yearly => 6,
            FrequencyGroup::Quarterly | FrequencyGroup::Other => 8,
            FrequencyGroup::Monthly => 18,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrequencyGroup::Yearly => "Yearly",
            FrequencyGroup::Quarterly => "Quarterly",
            FrequencyGroup::Monthly => "Monthly",
            FrequencyGroup::Other => "Other",
        }
    }
}

impl fmt::Display for FrequencyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for FrequencyGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let key = s.trim().to_ascii_lowercase();
        FrequencyGroup::ALL
            .into_iter()
            .find(|g| g.name().to_ascii_lowercase() == key)
            .ok_or_else(|| format!("unknown frequency group '{s}'"))
    }
}

/// One series with its held-out actuals.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetEntry {
    pub series: TimeSeries,
    pub group: FrequencyGroup,
    pub horizon: Horizon,
    /// Held-out values, `horizon` of them. Empty for forecast-only inputs.
    pub actuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    pub entries: Vec<DatasetEntry>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count per group, in [`FrequencyGroup::ALL`] order.
    pub fn group_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for e in &self.entries {
            counts[e.group as usize] += 1;
        }
        counts
    }
}

/// Loads a dataset; every row must carry its `h` held-out actuals.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset, DatasetError> {
    read_dataset(File::open(path)?, true)
}

/// Loads series for forecasting; held-out actuals are optional.
pub fn load_series(path: impl AsRef<Path>) -> Result<Dataset, DatasetError> {
    read_dataset(File::open(path)?, false)
}

/// Parses dataset text from any reader.
pub fn read_dataset<R: Read>(reader: R, require_actuals: bool) -> Result<Dataset, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut entries = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let fail = |message: String| DatasetError::Row { line, message };
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if record.len() < 5 {
            return Err(fail(format!(
                "expected at least 5 fields, found {}",
                record.len()
            )));
        }
        let id = record[0].to_string();
        let group: FrequencyGroup = record[1].parse().map_err(fail)?;
        let int = |idx: usize, name: &str, default: usize| -> Result<usize, DatasetError> {
            let raw = &record[idx];
            if raw.is_empty() {
                return Ok(default);
            }
            raw.parse::<usize>()
                .map_err(|_| fail(format!("{name} '{raw}' is not a non-negative integer")))
        };
        let period = int(2, "period", group.default_period())?;
        let h = int(3, "h", group.default_horizon())?;
        let n = int(4, "n", usize::MAX)?;
        if n == usize::MAX {
            return Err(fail("n is required".into()));
        }
        if period == 0 || h == 0 {
            return Err(fail("period and h must be at least 1".into()));
        }
        let values: Vec<f64> = record
            .iter()
            .skip(5)
            .enumerate()
            .map(|(i, v)| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| fail(format!("value {} ('{v}') is not a finite number", i + 1)))
            })
            .collect::<Result<_, _>>()?;
        let actuals = if values.len() == n + h {
            values[n..].to_vec()
        } else if values.len() == n && !require_actuals {
            Vec::new()
        } else {
            return Err(fail(format!(
                "found {} values but n + h = {} (held-out count must equal h)",
                values.len(),
                n + h
            )));
        };
        if n < 2 {
            return Err(fail(format!(
                "series needs at least 2 observations, got {n}"
            )));
        }
        let series =
            TimeSeries::new(id, values[..n].to_vec(), period).map_err(|e| fail(e.to_string()))?;
        entries.push(DatasetEntry {
            series,
            group,
            horizon: Horizon::new(h).map_err(|e| fail(e.to_string()))?,
            actuals,
        });
    }
    if entries.is_empty() {
        return Err(DatasetError::Empty);
    }
    Ok(Dataset { entries })
}

/// Writes `dataset` in the format [`read_dataset`] accepts.
pub fn write_dataset<W: Write>(dataset: &Dataset, writer: W) -> Result<(), DatasetError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    w.write_record(["id", "group", "period", "h", "n", "values"])?;
    for e in &dataset.entries {
        let mut row = vec![
            e.series.id().to_string(),
            e.group.to_string(),
            e.series.period().to_string(),
            e.horizon.get().to_string(),
            e.series.len().to_string(),
        ];
        row.extend(
            e.series
                .values()
                .iter()
                .chain(&e.actuals)
                .map(|v| v.to_string()),
        );
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_dataset(dataset: &Dataset, path: impl AsRef<Path>) -> Result<(), DatasetError> {
    write_dataset(dataset, File::create(path)?)
}

/// Shape of a synthetic corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    /// Series per group, in [`FrequencyGroup::ALL`] order.
    pub counts: [usize; 4],
}

impl SynthConfig {
    /// `total` series split across groups in M3 proportions (645/756/1428/174).
    pub fn proportional(seed: u64, total: usize) -> Self {
        let weights = [645usize, 756, 1428, 174];
        let sum: usize = weights.iter().sum();
        let mut counts = weights.map(|w| w * total / sum);
        let assigned: usize = counts.iter().sum();
        counts[2] += total - assigned;
        Self { seed, counts }
    }
}

fn length_range(group: FrequencyGroup) -> (usize, usize) {
    match group {
        FrequencyGroup::Yearly => (14, 41),
        FrequencyGroup::Quarterly => (16, 64),
        FrequencyGroup::Monthly => (48, 126),
        FrequencyGroup::Other => (71, 104),
    }
}

/// Positive series: exponential growth, a random-walk level, optional
/// multiplicative seasonality and multiplicative noise.
pub fn synth_dataset(config: &SynthConfig) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut entries = Vec::new();
    for (g, &count) in FrequencyGroup::ALL.iter().zip(&config.counts) {
        let (lo, hi) = length_range(*g);
        let period = g.default_period();
        let h = g.default_horizon();
        for i in 0..count {
            let n = rng.random_range(lo..=hi);
            let base = rng.random_range(500.0..8000.0);
            let growth = rng.random_range(-0.01..0.03);
            let walk_sd: f64 = rng.random_range(0.0..0.04);
            let noise_sd: f64 = rng.random_range(0.005..0.08);
            let amplitude = if period > 1 && rng.random_bool(0.7) {
                rng.random_range(0.05..0.3)
            } else {
                0.0
            };
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            let walk: Normal<f64> = Normal::new(0.0, walk_sd.max(1e-12)).expect("finite sd");
            let noise: Normal<f64> = Normal::new(0.0, noise_sd).expect("finite sd");
            let mut log_level = 0.0f64;
            let values: Vec<f64> = (1..=n + h)
                .map(|t| {
                    log_level += growth + walk.sample(&mut rng);
                    let season = 1.0
                        + amplitude
                            * (std::f64::consts::TAU * t as f64 / period as f64 + phase).sin();
                    base * log_level.exp() * season * noise.sample(&mut rng).exp()
                })
                .collect();
            let id = format!("{}{:04}", &g.name()[..1], i + 1);
            entries.push(DatasetEntry {
                series: TimeSeries::new(id, values[..n].to_vec(), period)
                    .expect("valid synthetic series"),
                group: *g,
                horizon: Horizon::new(h).expect("positive horizon"),
                actuals: values[n..].to_vec(),
            });
        }
    }
    Dataset { entries }
}
