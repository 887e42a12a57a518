//! Theta lines and their recombination.
//!
//! A theta line blends the data with its least-squares trend:
//! `Z_t(theta) = theta * y_t + (1 - theta) * (a + b t)`. Two lines with
//! `theta1 <= 1 <= theta2` recombine exactly into the data when weighted by
//! `w = (theta2 - 1) / (theta2 - theta1)` and `1 - w`, because
//! `w * theta1 + (1 - w) * theta2 = 1` is the only way to cancel the
//! residual term `y_t - a - b t`.
//!
//! The optimised method fixes `theta1 = 0`, which leaves the weights
//! `(1 - 1/theta, 1/theta)` on the extrapolated trend and the extrapolated
//! `Z(theta)` line.

use crate::error::{Result, ThetaError};
use crate::series::{fit_linear_trend, Horizon, TimeSeries, TrendFit};
use crate::smoothing::{self, Family, ForecasterSpec};

/// Two-line decomposition parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParams {
    pub theta1: f64,
    pub theta2: f64,
    pub omega: f64,
}

impl ThetaParams {
    /// Parameters with the recomposition weight implied by the two coefficients.
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        Ok(Self {
            theta1,
            theta2,
            omega: combination_weight(theta1, theta2)?,
        })
    }

    /// The optimised configuration: trend line plus `Z(theta)`.
    pub fn optimised(theta: f64) -> Result<Self> {
        Self::new(0.0, theta)
    }
}

/// A transformed copy of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaLine {
    pub theta: f64,
    pub values: Vec<f64>,
}

impl ThetaLine {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `Z_t(theta) = theta * y_t + (1 - theta) * (a + b t)` for `t = 1..n`.
pub fn theta_line(series: &TimeSeries, fit: &TrendFit, theta: f64) -> ThetaLine {
    let values = series
        .values()
        .iter()
        .enumerate()
        .map(|(i, y)| theta * y + (1.0 - theta) * fit.value_at(i + 1))
        .collect();
    ThetaLine { theta, values }
}

/// The unique weight on the first line that reproduces the data.
pub fn combination_weight(theta1: f64, theta2: f64) -> Result<f64> {
    if !(theta1.is_finite() && theta2.is_finite()) || theta1 > 1.0 || theta2 < 1.0 {
        return Err(ThetaError::domain(format!(
            "recomposition needs theta1 <= 1 <= theta2, got ({theta1}, {theta2})"
        )));
    }
    if theta1 == theta2 {
        // only possible at (1, 1)
        return Ok(1.0);
    }
    Ok((theta2 - 1.0) / (theta2 - theta1))
}

/// `omega * line1 + (1 - omega) * line2`, elementwise.
pub fn recompose(line1: &ThetaLine, line2: &ThetaLine, omega: f64) -> Result<Vec<f64>> {
    if line1.len() != line2.len() {
        return Err(ThetaError::Shape {
            expected: line1.len(),
            got: line2.len(),
        });
    }
    Ok(line1
        .values
        .iter()
        .zip(&line2.values)
        .map(|(a, b)| omega * a + (1.0 - omega) * b)
        .collect())
}

fn check_extrapolator(spec: &ForecasterSpec) -> Result<()> {
    match spec.family {
        Family::Ses | Family::Holt | Family::Damped => Ok(()),
        other => Err(ThetaError::domain(format!(
            "{other} cannot extrapolate a theta line (use ses, holt or damped)"
        ))),
    }
}

/// Forecasts `h` steps with trend weight `1 - 1/theta` and weight `1/theta`
/// on the extrapolated `Z(theta)` line.
pub fn otm_forecast(
    series: &TimeSeries,
    theta: f64,
    h: Horizon,
    extrapolator: &ForecasterSpec,
) -> Result<Vec<f64>> {
    if !theta.is_finite() || theta < 1.0 {
        return Err(ThetaError::domain(format!(
            "theta must be >= 1, got {theta}"
        )));
    }
    check_extrapolator(extrapolator)?;
    let fit = fit_linear_trend(series)?;
    let line = theta_line(series, &fit, theta);
    let fitted = smoothing::fit(extrapolator, &series.with_values(line.values))?;
    let line_fc = fitted.forecast(h);

    let w_line = 1.0 / theta;
    let w_trend = 1.0 - w_line;
    let n = series.len();
    Ok(line_fc
        .iter()
        .enumerate()
        .map(|(k, z)| w_trend * fit.value_at(n + k + 1) + w_line * z)
        .collect())
}
