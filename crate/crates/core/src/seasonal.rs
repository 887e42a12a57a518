//! Seasonality testing and multiplicative classical decomposition.

use crate::error::{Result, ThetaError};
use crate::series::TimeSeries;

/// One-sided 90% normal quantile used for the lag-`period` autocorrelation band.
const SEASONAL_Z: f64 = 1.645;

/// Multiplicative seasonal factors, one per position in the cycle.
///
/// Position `i` applies to every time index `t` with `(t - 1) % period == i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeasonalIndices(Vec<f64>);

impl SeasonalIndices {
    pub fn new(indices: Vec<f64>) -> Result<Self> {
        if indices.is_empty() {
            return Err(ThetaError::domain("seasonal indices cannot be empty"));
        }
        if indices.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(ThetaError::domain(
                "seasonal indices must be positive and finite",
            ));
        }
        Ok(Self(indices))
    }

    /// All ones: the identity adjustment.
    pub fn neutral(period: usize) -> Self {
        Self(vec![1.0; period.max(1)])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn period(&self) -> usize {
        self.0.len()
    }

    /// Factor for 1-based time index `t`.
    pub fn factor_at(&self, t: usize) -> f64 {
        self.0[(t - 1) % self.0.len()]
    }
}

/// Sample autocorrelations `r_1..=r_max_lag`. `None` for a constant series.
pub fn autocorrelations(values: &[f64], max_lag: usize) -> Option<Vec<f64>> {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let denom: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    if denom <= 0.0 || !denom.is_finite() {
        return None;
    }
    Some(
        (1..=max_lag)
            .map(|k| {
                if k >= n {
                    return 0.0;
                }
                let num: f64 = (0..n - k)
                    .map(|t| (values[t] - mean) * (values[t + k] - mean))
                    .sum();
                num / denom
            })
            .collect(),
    )
}

/// Autocorrelation test at lag `period` against the 90% band
/// `1.645 * sqrt((1 + 2 * sum_{i<period} r_i^2) / n)`.
///
/// Period 1 and series shorter than three full cycles are never seasonal.
pub fn is_seasonal(series: &TimeSeries) -> bool {
    let m = series.period();
    let n = series.len();
    if m <= 1 || n < 3 * m {
        return false;
    }
    let Some(acf) = autocorrelations(series.values(), m) else {
        return false;
    };
    let lower: f64 = acf[..m - 1].iter().map(|r| r * r).sum();
    let band = SEASONAL_Z * ((1.0 + 2.0 * lower) / n as f64).sqrt();
    acf[m - 1].abs() > band
}

/// Whether the pipelines should deseasonalize: the test passes and every
/// observation is positive (the multiplicative model needs that).
pub fn needs_adjustment(series: &TimeSeries) -> bool {
    series.values().iter().all(|v| *v > 0.0) && is_seasonal(series)
}

/// Centered moving average of window `period`, half weights on the two
/// end points when the period is even. Entries without a full window are `None`.
fn centered_moving_average(values: &[f64], period: usize) -> Vec<Option<f64>> {
    let n = values.len();
    let half = period / 2;
    let mut out = vec![None; n];
    if n < 2 * half + 1 {
        return out;
    }
    for (c, slot) in out.iter_mut().enumerate().take(n - half).skip(half) {
        let avg = if period % 2 == 1 {
            values[c - half..=c + half].iter().sum::<f64>() / period as f64
        } else {
            let inner: f64 = values[c - half + 1..c + half].iter().sum();
            (inner + 0.5 * (values[c - half] + values[c + half])) / period as f64
        };
        *slot = Some(avg);
    }
    out
}

/// Classical multiplicative decomposition indices: ratio to the centered
/// moving average, averaged per season position, normalized to mean 1.
pub fn seasonal_indices(series: &TimeSeries) -> Result<SeasonalIndices> {
    let m = series.period();
    if series.values().iter().any(|v| *v <= 0.0) {
        return Err(ThetaError::domain(
            "multiplicative decomposition needs strictly positive observations",
        ));
    }
    if m == 1 {
        return Ok(SeasonalIndices::neutral(1));
    }
    let y = series.values();
    let cma = centered_moving_average(y, m);
    let mut sums = vec![0.0; m];
    let mut counts = vec![0usize; m];
    for (i, avg) in cma.iter().enumerate() {
        if let Some(avg) = avg {
            sums[i % m] += y[i] / avg;
            counts[i % m] += 1;
        }
    }
    if counts.contains(&0) {
        return Err(ThetaError::TooShort {
            needed: 2 * m,
            got: y.len(),
        });
    }
    let raw: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| s / c as f64)
        .collect();
    let mean = raw.iter().sum::<f64>() / m as f64;
    SeasonalIndices::new(raw.into_iter().map(|r| r / mean).collect())
}

/// Divides each observation by its season's factor.
pub fn deseasonalize(series: &TimeSeries, idx: &SeasonalIndices) -> Result<TimeSeries> {
    check_period(series.period(), idx)?;
    let values = series
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| v / idx.factor_at(i + 1))
        .collect();
    Ok(series.with_values(values))
}

/// Multiplies forecast `k` (0-based) by the factor of time `start_t + k`.
pub fn reseasonalize(forecasts: &[f64], idx: &SeasonalIndices, start_t: usize) -> Vec<f64> {
    forecasts
        .iter()
        .enumerate()
        .map(|(k, f)| f * idx.factor_at(start_t + k))
        .collect()
}

fn check_period(period: usize, idx: &SeasonalIndices) -> Result<()> {
    if idx.period() != period {
        Err(ThetaError::Shape {
            expected: period,
            got: idx.period(),
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn series(values: Vec<f64>, period: usize) -> TimeSeries {
        TimeSeries::new("s", values, period).unwrap()
    }

    fn pattern(s: &[f64], cycles: usize, level: f64) -> Vec<f64> {
        (0..cycles * s.len())
            .map(|i| level * s[i % s.len()])
            .collect()
    }

    #[test]
    fn period_one_never_seasonal() {
        assert!(!is_seasonal(&series(pattern(&[0.5, 1.5], 20, 1.0), 1)));
    }

    #[test]
    fn short_series_never_seasonal() {
        let y: Vec<f64> = (1..=10).map(|t| 10.0 + (t % 12) as f64).collect();
        assert!(!is_seasonal(&series(y, 12)));
    }

    #[test]
    fn sine_wave_is_seasonal() {
        let y: Vec<f64> = (1..=48)
            .map(|t| 10.0 + (2.0 * std::f64::consts::PI * t as f64 / 4.0).sin())
            .collect();
        // Hand-run oracle: deviations cycle (1, 0, -1, 0), denominator 24.
        // Lag 4 pairs 44 terms, 22 of them nonzero and equal to +1: r_4 = 22/24.
        // Lag 2 pairs 46 terms, 23 nonzero and equal to -1: r_2 = -23/24.
        let d: Vec<f64> = y.iter().map(|v| v - 10.0).collect();
        let denom: f64 = d.iter().map(|v| v * v).sum();
        let r = |k: usize| (0..48 - k).map(|t| d[t] * d[t + k]).sum::<f64>() / denom;
        assert_abs_diff_eq!(denom, 24.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r(4), 22.0 / 24.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r(2), -23.0 / 24.0, epsilon = 1e-9);
        let band =
            1.645 * ((1.0 + 2.0 * (r(1).powi(2) + r(2).powi(2) + r(3).powi(2))) / 48.0).sqrt();
        assert!(r(4) > band);
        assert!(is_seasonal(&series(y, 4)));
    }

    #[test]
    fn constant_series_not_seasonal() {
        assert!(!is_seasonal(&series(vec![3.0; 48], 12)));
    }

    #[test]
    fn recovers_exact_pattern() {
        let s = [0.8, 1.2, 0.9, 1.1];
        let y = pattern(&s, 10, 50.0);
        // One cycle by hand: CMA at t=3 is (0.5*0.8 + 1.2 + 0.9 + 1.1 + 0.5*0.8)*50/4 = 50,
        // so the ratio there is 0.9; every full window averages to the level.
        let cma3 = (0.5 * y[0] + y[1] + y[2] + y[3] + 0.5 * y[4]) / 4.0;
        assert_abs_diff_eq!(y[2] / cma3, 0.9, epsilon = 1e-12);
        let idx = seasonal_indices(&series(y.clone(), 4)).unwrap();
        for (got, want) in idx.as_slice().iter().zip(s) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let scaled: Vec<f64> = y.iter().map(|v| v * 7.0).collect();
        let idx7 = seasonal_indices(&series(scaled, 4)).unwrap();
        for (a, b) in idx.as_slice().iter().zip(idx7.as_slice()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
        }
    }

    #[test]
    fn odd_period_pattern() {
        let s = [0.7, 1.0, 1.3];
        let idx = seasonal_indices(&series(pattern(&s, 6, 3.0), 3)).unwrap();
        for (got, want) in idx.as_slice().iter().zip(s) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn flat_pattern_gives_unit_indices() {
        let idx = seasonal_indices(&series(vec![4.0; 40], 4)).unwrap();
        for v in idx.as_slice() {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn non_positive_rejected() {
        let mut y = pattern(&[0.8, 1.2], 10, 2.0);
        y[3] = 0.0;
        assert!(matches!(
            seasonal_indices(&series(y, 2)),
            Err(ThetaError::Domain(_))
        ));
    }

    #[test]
    fn deseasonalize_examples() {
        let y = series(vec![0.8, 1.2, 0.8, 1.2], 2);
        let idx = SeasonalIndices::new(vec![0.8, 1.2]).unwrap();
        let d = deseasonalize(&y, &idx).unwrap();
        for v in d.values() {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-15);
        }
        let same = deseasonalize(&y, &SeasonalIndices::neutral(2)).unwrap();
        assert_eq!(same.values(), y.values());
        assert!(deseasonalize(&y, &SeasonalIndices::neutral(3)).is_err());
    }

    #[test]
    fn reseasonalize_examples() {
        let idx = SeasonalIndices::new(vec![0.5, 1.5]).unwrap();
        // n = 4 (even), so forecasting starts at t = 5, position 0
        assert_eq!(reseasonalize(&[2.0, 2.0], &idx, 5), vec![1.0, 3.0]);
        assert_eq!(
            reseasonalize(&[2.0, 3.0], &SeasonalIndices::neutral(4), 9),
            vec![2.0, 3.0]
        );
    }

    proptest! {
        #[test]
        fn round_trip(
            y in prop::collection::vec(0.1f64..1e3, 1..60),
            idx in prop::collection::vec(0.2f64..3.0, 1..13),
        ) {
            let m = idx.len();
            let s = series(y.clone(), m);
            let idx = SeasonalIndices::new(idx).unwrap();
            let d = deseasonalize(&s, &idx).unwrap();
            let back = reseasonalize(d.values(), &idx, 1);
            for (a, b) in back.iter().zip(&y) {
                prop_assert!((a - b).abs() <= 1e-12 * b.abs());
            }
        }

        #[test]
        fn indices_have_unit_mean(
            base in prop::collection::vec(0.5f64..2.0, 4),
            noise in prop::collection::vec(0.9f64..1.1, 48),
        ) {
            let y: Vec<f64> = noise.iter().enumerate().map(|(i, e)| 10.0 * base[i % 4] * e).collect();
            let idx = seasonal_indices(&series(y, 4)).unwrap();
            let mean = idx.as_slice().iter().sum::<f64>() / 4.0;
            prop_assert!((mean - 1.0).abs() <= 1e-9);
            prop_assert!(idx.as_slice().iter().all(|v| *v > 0.0));
        }

        #[test]
        fn test_is_scale_invariant(
            y in prop::collection::vec(1f64..100.0, 12..80),
            c in 0.01f64..1000.0,
        ) {
            let scaled: Vec<f64> = y.iter().map(|v| v * c).collect();
            prop_assert_eq!(is_seasonal(&series(y, 4)), is_seasonal(&series(scaled, 4)));
        }
    }
}
