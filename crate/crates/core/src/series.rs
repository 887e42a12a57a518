//! Series representation and least-squares trend fitting.
//!
//! Time is indexed from 1, so a series `y_1..y_n` has its trend evaluated at
//! `t = 1..n` and forecast step `k` extrapolates the trend at `t = n + k`.

use crate::error::{Result, ThetaError};

/// An ordered, gap-free univariate series with a seasonal period.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    id: String,
    values: Vec<f64>,
    period: usize,
}

impl TimeSeries {
    /// Builds a series, rejecting a zero period or non-finite observations.
    pub fn new(id: impl Into<String>, values: Vec<f64>, period: usize) -> Result<Self> {
        if period == 0 {
            return Err(ThetaError::domain("seasonal period must be at least 1"));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(ThetaError::Input(format!(
                "observation {} is not a finite number",
                pos + 1
            )));
        }
        Ok(Self {
            id: id.into(),
            values,
            period,
        })
    }

    /// Non-seasonal series with an empty id.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new("", values, 1)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Same id and period, different observations. Used for prefixes and
    /// transformed copies (theta lines, deseasonalized data).
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        Self {
            id: self.id.clone(),
            values,
            period: self.period,
        }
    }

    /// The first `len` observations.
    pub fn prefix(&self, len: usize) -> Self {
        self.with_values(self.values[..len.min(self.values.len())].to_vec())
    }

    pub(crate) fn require_len(&self, needed: usize) -> Result<()> {
        if self.values.len() < needed {
            Err(ThetaError::TooShort {
                needed,
                got: self.values.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// Number of out-of-sample forecasts requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Horizon(usize);

impl Horizon {
    pub fn new(h: usize) -> Result<Self> {
        if h == 0 {
            Err(ThetaError::domain("forecast horizon must be at least 1"))
        } else {
            Ok(Horizon(h))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Ordinary least-squares line `intercept + slope * t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendFit {
    pub intercept: f64,
    pub slope: f64,
}

impl TrendFit {
    pub fn new(intercept: f64, slope: f64) -> Self {
        Self { intercept, slope }
    }

    /// `intercept + slope * t`.
    pub fn value_at(&self, t: usize) -> f64 {
        self.intercept + self.slope * t as f64
    }
}

/// Fits `y_t = a + b t` by least squares over `t = 1..n`.
pub fn fit_linear_trend(series: &TimeSeries) -> Result<TrendFit> {
    series.require_len(2)?;
    Ok(ols_on_time(series.values()))
}

pub(crate) fn ols_on_time(y: &[f64]) -> TrendFit {
    let n = y.len() as f64;
    let t_mean = (n + 1.0) / 2.0;
    let y_mean = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    for (i, &v) in y.iter().enumerate() {
        sxy += (i as f64 + 1.0 - t_mean) * (v - y_mean);
    }
    // sum of (t - t_mean)^2 for t = 1..n
    let sxx = n * (n * n - 1.0) / 12.0;
    let slope = sxy / sxx;
    TrendFit {
        intercept: y_mean - slope * t_mean,
        slope,
    }
}

/// Evaluates the fitted line at time index `t` (1-based).
pub fn trend_value(fit: &TrendFit, t: usize) -> f64 {
    fit.value_at(t)
}
