//! Univariate forecasting with the Optimised Theta method.
//!
//! The crate decomposes a (seasonally adjusted) series into its
//! least-squares trend and a theta line `Z(theta)`, extrapolates both, and
//! recombines them with weights that reproduce the data exactly in sample.
//! Theta is picked from a small grid by minimising a generalised
//! rolling-origin validation loss. Classic Theta (theta fixed at 2), the
//! exponential smoothing family and naive benchmarks are included, along
//! with sMAPE/MASE scoring and a batch evaluation harness for M3-style
//! corpora.
//!
//! Module map:
//!
//! - [`series`]: series type, least-squares trend
//! - [`seasonal`]: seasonality test, classical multiplicative decomposition
//! - [`smoothing`]: SES, Holt, Damped, Holt-Winters, Naive, Naive2
//! - [`theta`]: theta lines, recombination weights, OTM forecasts
//! - [`groe`]: validation schedules, costs, theta selection
//! - [`metrics`]: sMAPE, MASE, average ranks, evaluation tables
//! - [`pipeline`]: end-to-end per-series methods
//! - [`dataset`], [`experiment`]: corpus files and batch runs
//!
//! ```
//! use optheta::{run_otm, Approach, CostFn, ForecasterSpec, Horizon, MethodSpec, TimeSeries};
//!
//! let y: Vec<f64> = (1..=30).map(|t| 100.0 + 2.0 * t as f64 + (t % 3) as f64).collect();
//! let series = TimeSeries::new("demo", y, 1).unwrap();
//! let method = MethodSpec::otm(Approach::D, CostFn::Se, ForecasterSpec::ses());
//! let result = run_otm(&series, Horizon::new(6).unwrap(), &method).unwrap();
//! assert_eq!(result.forecasts.len(), 6);
//! ```

pub mod dataset;
pub mod error;
pub mod experiment;
pub mod groe;
pub mod metrics;
pub mod pipeline;
pub mod seasonal;
pub mod series;
pub mod smoothing;
pub mod theta;

pub use dataset::{Dataset, DatasetEntry, DatasetError, FrequencyGroup};
pub use error::{Result, ThetaError};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentOutput};
pub use groe::{
    approach_config, estimate_theta, groe_loss, origin_schedule, p_max, Approach, CostFn,
    GroeConfig, ThetaGrid,
};
pub use metrics::{average_ranks, mase, smape, EvaluationTable, SeriesScore};
pub use pipeline::{
    run_benchmark, run_classic_theta, run_method, run_otm, ForecastResult, MethodKind, MethodSpec,
};
pub use seasonal::{deseasonalize, is_seasonal, reseasonalize, seasonal_indices, SeasonalIndices};
pub use series::{fit_linear_trend, trend_value, Horizon, TimeSeries, TrendFit};
pub use smoothing::{Family, FittedForecaster, ForecasterSpec};
pub use theta::{combination_weight, otm_forecast, recompose, theta_line, ThetaLine, ThetaParams};
