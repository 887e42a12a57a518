//! Generalised rolling-origin evaluation and theta selection.
//!
//! A validation schedule is four integers: `p` forecast origins starting at
//! `n1` and spaced `m` apart, each producing up to `H` forecasts. The loss
//! sums a cost over every (origin, step) pair that falls inside the sample:
//!
//! ```text
//! l(theta) = sum_{i=1..p} sum_{j=1..min(H, n - n_i)} g(y_{n_i + j}, yhat_{n_i + j | n_i})
//! ```
//!
//! Fixed-origin evaluation (`p = 1`) and one-step rolling origin
//! (`m = H = 1`) are both special cases.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, ThetaError};
use crate::series::{Horizon, TimeSeries};
use crate::smoothing::ForecasterSpec;
use crate::theta::otm_forecast;

/// Symmetric, non-negative forecast error cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostFn {
    /// `(a - b)^2`
    Se,
    /// `|a - b|`
    Ae,
    /// `2|a - b| / (|a| + |b|)`, defined as 0 when both are 0.
    Sape,
}

impl CostFn {
    pub const ALL: [CostFn; 3] = [CostFn::Se, CostFn::Ae, CostFn::Sape];

    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            CostFn::Se => (a - b) * (a - b),
            CostFn::Ae => (a - b).abs(),
            CostFn::Sape => sape(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CostFn::Se => "se",
            CostFn::Ae => "ae",
            CostFn::Sape => "sape",
        }
    }
}

/// Symmetric absolute percentage error of one pair (not scaled by 100).
pub fn sape(a: f64, b: f64) -> f64 {
    let denom = a.abs() + b.abs();
    if denom == 0.0 {
        0.0
    } else {
        2.0 * (a - b).abs() / denom
    }
}

impl fmt::Display for CostFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for CostFn {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "se" => Ok(CostFn::Se),
            "ae" => Ok(CostFn::Ae),
            "sape" => Ok(CostFn::Sape),
            other => Err(ThetaError::Input(format!(
                "unknown cost function '{other}'"
            ))),
        }
    }
}

/// Validation schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroeConfig {
    /// Number of origins.
    pub p: usize,
    /// Origin step.
    pub m: usize,
    /// Forecasts per origin.
    pub horizon: usize,
    /// First origin (length of the first training prefix).
    pub n1: usize,
}

impl GroeConfig {
    pub fn new(p: usize, m: usize, horizon: usize, n1: usize) -> Self {
        Self { p, m, horizon, n1 }
    }

    /// Checks `1 < n1 < n`, `m, H >= 1` and `1 <= p <= p_max`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.horizon == 0 {
            return Err(ThetaError::domain("GROE needs H >= 1"));
        }
        let max = p_max(n, self.n1, self.m)?;
        if self.p == 0 || self.p > max {
            return Err(ThetaError::domain(format!(
                "p = {} outside 1..={max} for n = {n}, n1 = {}, m = {}",
                self.p, self.n1, self.m
            )));
        }
        Ok(())
    }
}

/// Candidate values for theta, ascending and all `>= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid(Vec<f64>);

impl ThetaGrid {
    pub fn new(candidates: Vec<f64>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(ThetaError::domain("theta grid is empty"));
        }
        if candidates.iter().any(|t| !(t.is_finite() && *t >= 1.0)) {
            return Err(ThetaError::domain(
                "theta candidates must be finite and >= 1",
            ));
        }
        if candidates.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ThetaError::domain("theta grid must be strictly ascending"));
        }
        Ok(Self(candidates))
    }

    /// A grid holding a single fixed theta.
    pub fn single(theta: f64) -> Result<Self> {
        Self::new(vec![theta])
    }

    pub fn candidates(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for ThetaGrid {
    /// `{1, 1.5, ..., 5}`.
    fn default() -> Self {
        Self((0..9).map(|i| 1.0 + 0.5 * i as f64).collect())
    }
}

/// Maximum number of origins: `1 + floor((n - n1) / m)`.
pub fn p_max(n: usize, n1: usize, m: usize) -> Result<usize> {
    if m == 0 {
        return Err(ThetaError::domain("origin step m must be >= 1"));
    }
    if !(1 < n1 && n1 < n) {
        return Err(ThetaError::domain(format!(
            "first origin must satisfy 1 < n1 < n, got n1 = {n1}, n = {n}"
        )));
    }
    Ok(1 + (n - n1) / m)
}

/// Origins `n1, n1 + m, ..., n1 + (p - 1) m`.
pub fn origin_schedule(config: &GroeConfig, n: usize) -> Result<Vec<usize>> {
    config.validate(n)?;
    Ok((0..config.p).map(|i| config.n1 + i * config.m).collect())
}

/// Evaluates the loss of `candidate`, which maps a training prefix and a
/// horizon to forecasts. Origins with no observations left contribute nothing.
pub fn groe_loss<F>(
    series: &TimeSeries,
    mut candidate: F,
    config: &GroeConfig,
    cost: CostFn,
) -> Result<f64>
where
    F: FnMut(&TimeSeries, Horizon) -> Result<Vec<f64>>,
{
    let n = series.len();
    let y = series.values();
    let mut total = 0.0;
    for origin in origin_schedule(config, n)? {
        let steps = config.horizon.min(n - origin);
        if steps == 0 {
            continue;
        }
        let tag = |e: ThetaError| ThetaError::Evaluation {
            origin,
            source: Box::new(e),
        };
        let fc = candidate(&series.prefix(origin), Horizon::new(steps)?).map_err(tag)?;
        if fc.len() < steps {
            return Err(tag(ThetaError::Shape {
                expected: steps,
                got: fc.len(),
            }));
        }
        for j in 0..steps {
            total += cost.apply(y[origin + j], fc[j]);
        }
    }
    Ok(total)
}

/// The eight validation schemes, (a) through (h).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Approach {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl Approach {
    pub const ALL: [Approach; 8] = [
        Approach::A,
        Approach::B,
        Approach::C,
        Approach::D,
        Approach::E,
        Approach::F,
        Approach::G,
        Approach::H,
    ];

    pub fn letter(self) -> char {
        match self {
            Approach::A => 'a',
            Approach::B => 'b',
            Approach::C => 'c',
            Approach::D => 'd',
            Approach::E => 'e',
            Approach::F => 'f',
            Approach::G => 'g',
            Approach::H => 'h',
        }
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("({})", self.letter()))
    }
}

impl FromStr for Approach {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .to_ascii_lowercase();
        Approach::ALL
            .into_iter()
            .find(|a| key.len() == 1 && key.starts_with(a.letter()))
            .ok_or_else(|| ThetaError::Input(format!("unknown approach '{s}' (expected a..h)")))
    }
}

/// Smallest first origin any approach may use.
pub const MIN_FIRST_ORIGIN: usize = 4;

/// Schedule for `approach` on a series of length `n` with horizon `h`.
///
/// `H = h` throughout. Approaches (a)-(d) start at `n - h`, (e)-(h) at
/// `n - 2h`; the first origin is raised to at least 4, then `p` is capped
/// at `min(p_max, h)`.
pub fn approach_config(approach: Approach, n: usize, h: Horizon) -> Result<GroeConfig> {
    let h = h.get();
    if n <= h {
        return Err(ThetaError::domain(format!(
            "series of length {n} leaves no training prefix for horizon {h}"
        )));
    }
    let half = h.div_ceil(2);
    let third = h.div_ceil(3);
    let (p, m, back) = match approach {
        Approach::A => (1, h, h),
        Approach::B => (2, half, h),
        Approach::C => (3, third, h),
        Approach::D => (h, 1, h),
        Approach::E => (2, h, 2 * h),
        Approach::F => (4, half, 2 * h),
        Approach::G => (6, third, 2 * h),
        Approach::H => (h, 1, 2 * h),
    };
    let n1 = n.saturating_sub(back).max(MIN_FIRST_ORIGIN);
    let max = p_max(n, n1, m)?;
    Ok(GroeConfig {
        p: p.min(max).min(h),
        m,
        horizon: h,
        n1,
    })
}

/// GROE loss of each grid candidate, in grid order.
pub fn theta_losses(
    series: &TimeSeries,
    grid: &ThetaGrid,
    config: &GroeConfig,
    cost: CostFn,
    extrapolator: &ForecasterSpec,
) -> Vec<(f64, Result<f64>)> {
    grid.candidates()
        .iter()
        .map(|&theta| {
            let loss = groe_loss(
                series,
                |prefix, hz| otm_forecast(prefix, theta, hz, extrapolator),
                config,
                cost,
            );
            (theta, loss)
        })
        .collect()
}

/// The grid value with the lowest GROE loss; ties go to the smallest theta.
pub fn estimate_theta(
    series: &TimeSeries,
    grid: &ThetaGrid,
    config: &GroeConfig,
    cost: CostFn,
    extrapolator: &ForecasterSpec,
) -> Result<f64> {
    let mut best: Option<(f64, f64)> = None;
    let mut first_err = None;
    for (theta, loss) in theta_losses(series, grid, config, cost, extrapolator) {
        match loss {
            Ok(l) if l.is_finite() => {
                if best.is_none_or(|(_, b)| l < b) {
                    best = Some((theta, l));
                }
            }
            Ok(l) => {
                first_err.get_or_insert(ThetaError::domain(format!(
                    "non-finite loss {l} for theta = {theta}"
                )));
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match (best, first_err) {
        (Some((theta, _)), _) => Ok(theta),
        (None, Some(e)) => Err(e),
        (None, None) => Err(ThetaError::domain("theta grid is empty")),
    }
}
