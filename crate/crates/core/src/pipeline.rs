//! Per-series forecasting pipelines.
//!
//! The theta pipelines run: seasonality test, multiplicative
//! deseasonalization when the test passes, theta selection on the adjusted
//! series (skipped for single-value grids), trend plus `Z(theta)`
//! extrapolation, and reseasonalization. Classic Theta is the same pipeline
//! with theta fixed to 2 and SES on the theta line.

use std::time::{Duration, Instant};

use crate::error::{Result, ThetaError};
use crate::groe::{approach_config, estimate_theta, Approach, CostFn, ThetaGrid};
use crate::seasonal::{self, SeasonalIndices};
use crate::series::{Horizon, TimeSeries};
use crate::smoothing::{self, Family, ForecasterSpec};
use crate::theta::otm_forecast;

/// Theta used when a series is too short for any validation schedule.
pub const FALLBACK_THETA: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub enum MethodKind {
    /// Optimised Theta: theta chosen on `grid` by GROE under `approach`.
    Otm {
        approach: Approach,
        cost: CostFn,
        grid: ThetaGrid,
        extrapolator: ForecasterSpec,
    },
    /// Theta fixed at 2, SES on the theta line.
    ClassicTheta,
    Benchmark(ForecasterSpec),
}

/// A named forecasting method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub name: String,
    pub kind: MethodKind,
}

impl MethodSpec {
    /// OTM over the default grid. Named like `OTM(d)-SE`, with the
    /// extrapolator appended when it is not SES.
    pub fn otm(approach: Approach, cost: CostFn, extrapolator: ForecasterSpec) -> Self {
        let mut name = format!("OTM{approach}-{}", cost.name().to_ascii_uppercase());
        if extrapolator.family != Family::Ses {
            name.push('-');
            name.push_str(extrapolator.family.name());
        }
        Self {
            name,
            kind: MethodKind::Otm {
                approach,
                cost,
                grid: ThetaGrid::default(),
                extrapolator,
            },
        }
    }

    pub fn with_grid(mut self, new_grid: ThetaGrid) -> Self {
        if let MethodKind::Otm { grid, .. } = &mut self.kind {
            *grid = new_grid;
        }
        self
    }

    pub fn classic_theta() -> Self {
        Self {
            name: "Theta".into(),
            kind: MethodKind::ClassicTheta,
        }
    }

    pub fn benchmark(spec: ForecasterSpec) -> Self {
        let name = match spec.family {
            Family::Naive => "Naive",
            Family::Naive2 => "Naive2",
            Family::Ses => "SES",
            Family::Holt => "Holt",
            Family::HoltWinters => "Holt/Holt-Winters",
            Family::Damped => "Damped",
            Family::SeasonalDamped => "Damped/Seasonal Damped",
        };
        Self {
            name: name.into(),
            kind: MethodKind::Benchmark(spec),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Forecasts of one method for one series.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastResult {
    pub series_id: String,
    pub method: String,
    pub forecasts: Vec<f64>,
    pub chosen_theta: Option<f64>,
    /// Whether deseasonalization was applied.
    pub seasonal: bool,
    /// Theta estimation was skipped because no schedule fits the series.
    pub fallback: bool,
    pub elapsed: Duration,
}

impl ForecastResult {
    /// Equality ignoring `elapsed`.
    pub fn same_output(&self, other: &ForecastResult) -> bool {
        self.series_id == other.series_id
            && self.method == other.method
            && self.forecasts == other.forecasts
            && self.chosen_theta == other.chosen_theta
            && self.seasonal == other.seasonal
            && self.fallback == other.fallback
    }
}

/// Deseasonalized working copy plus the indices needed to undo it.
fn adjust(series: &TimeSeries) -> Result<(TimeSeries, Option<SeasonalIndices>)> {
    if seasonal::needs_adjustment(series) {
        let idx = seasonal::seasonal_indices(series)?;
        Ok((seasonal::deseasonalize(series, &idx)?, Some(idx)))
    } else {
        Ok((series.clone(), None))
    }
}

struct ThetaRun {
    forecasts: Vec<f64>,
    theta: f64,
    seasonal: bool,
    fallback: bool,
}

fn theta_pipeline(
    series: &TimeSeries,
    h: Horizon,
    grid: &ThetaGrid,
    approach: Approach,
    cost: CostFn,
    extrapolator: &ForecasterSpec,
) -> Result<ThetaRun> {
    let (work, idx) = adjust(series)?;
    let (theta, fallback) = match grid.candidates() {
        [only] => (*only, false),
        _ => match approach_config(approach, work.len(), h) {
            Ok(cfg) => (
                estimate_theta(&work, grid, &cfg, cost, extrapolator)?,
                false,
            ),
            Err(_) => (FALLBACK_THETA, true),
        },
    };
    let mut forecasts = otm_forecast(&work, theta, h, extrapolator)?;
    if let Some(idx) = &idx {
        forecasts = seasonal::reseasonalize(&forecasts, idx, series.len() + 1);
    }
    Ok(ThetaRun {
        forecasts,
        theta,
        seasonal: idx.is_some(),
        fallback,
    })
}

/// Optimised Theta for one series.
pub fn run_otm(series: &TimeSeries, h: Horizon, spec: &MethodSpec) -> Result<ForecastResult> {
    let MethodKind::Otm {
        approach,
        cost,
        grid,
        extrapolator,
    } = &spec.kind
    else {
        return Err(ThetaError::Input(format!(
            "{} is not an OTM method",
            spec.name
        )));
    };
    let start = Instant::now();
    let run = theta_pipeline(series, h, grid, *approach, *cost, extrapolator)?;
    Ok(ForecastResult {
        series_id: series.id().to_string(),
        method: spec.name.clone(),
        forecasts: run.forecasts,
        chosen_theta: Some(run.theta),
        seasonal: run.seasonal,
        fallback: run.fallback,
        elapsed: start.elapsed(),
    })
}

/// Classic Theta: theta = 2, SES on the theta line, equal weights.
pub fn run_classic_theta(series: &TimeSeries, h: Horizon) -> Result<ForecastResult> {
    let start = Instant::now();
    let grid = ThetaGrid::single(FALLBACK_THETA)?;
    let run = theta_pipeline(
        series,
        h,
        &grid,
        Approach::A,
        CostFn::Se,
        &ForecasterSpec::ses(),
    )?;
    Ok(ForecastResult {
        series_id: series.id().to_string(),
        method: MethodSpec::classic_theta().name,
        forecasts: run.forecasts,
        chosen_theta: Some(run.theta),
        seasonal: run.seasonal,
        fallback: false,
        elapsed: start.elapsed(),
    })
}

/// One of the smoothing or naive benchmarks. Holt-Winters and Seasonal
/// Damped fall back to Holt and Damped when the series is not seasonal.
pub fn run_benchmark(series: &TimeSeries, h: Horizon, spec: &MethodSpec) -> Result<ForecastResult> {
    let MethodKind::Benchmark(forecaster) = &spec.kind else {
        return Err(ThetaError::Input(format!(
            "{} is not a benchmark method",
            spec.name
        )));
    };
    let start = Instant::now();
    let mut forecaster = *forecaster;
    if forecaster.family.is_seasonal() && !seasonal::needs_adjustment(series) {
        forecaster.family = forecaster.family.non_seasonal();
    }
    let fitted = smoothing::fit(&forecaster, series)?;
    Ok(ForecastResult {
        series_id: series.id().to_string(),
        method: spec.name.clone(),
        forecasts: fitted.forecast(h),
        chosen_theta: None,
        seasonal: fitted.is_seasonal(),
        fallback: false,
        elapsed: start.elapsed(),
    })
}

/// Dispatches on the method kind.
pub fn run_method(series: &TimeSeries, h: Horizon, spec: &MethodSpec) -> Result<ForecastResult> {
    match spec.kind {
        MethodKind::Otm { .. } => run_otm(series, h, spec),
        MethodKind::ClassicTheta => {
            let mut r = run_classic_theta(series, h)?;
            r.method = spec.name.clone();
            Ok(r)
        }
        MethodKind::Benchmark(_) => run_benchmark(series, h, spec),
    }
}
