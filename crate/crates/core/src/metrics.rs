//! Out-of-sample accuracy: sMAPE, MASE, average ranks and the per-group
//! evaluation table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use crate::dataset::FrequencyGroup;
use crate::error::{Result, ThetaError};
use crate::groe::sape;

fn check_lengths(actuals: &[f64], forecasts: &[f64]) -> Result<()> {
    if actuals.len() != forecasts.len() {
        return Err(ThetaError::Shape {
            expected: actuals.len(),
            got: forecasts.len(),
        });
    }
    if actuals.is_empty() {
        return Err(ThetaError::Input("no forecasts to score".into()));
    }
    Ok(())
}

/// Symmetric MAPE in percent: `200/h * sum |y - f| / (|y| + |f|)`.
pub fn smape(actuals: &[f64], forecasts: &[f64]) -> Result<f64> {
    check_lengths(actuals, forecasts)?;
    let total: f64 = actuals
        .iter()
        .zip(forecasts)
        .map(|(a, f)| sape(*a, *f))
        .sum();
    // sape already carries the factor 2
    Ok(100.0 * total / actuals.len() as f64)
}

/// Mean absolute error scaled by the in-sample mean absolute first difference.
pub fn mase(insample: &[f64], actuals: &[f64], forecasts: &[f64]) -> Result<f64> {
    check_lengths(actuals, forecasts)?;
    if insample.len() < 2 {
        return Err(ThetaError::TooShort {
            needed: 2,
            got: insample.len(),
        });
    }
    let scale: f64 = insample.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    if scale == 0.0 {
        return Err(ThetaError::UndefinedMetric(
            "MASE needs a non-constant in-sample series".into(),
        ));
    }
    let abs_err: f64 = actuals
        .iter()
        .zip(forecasts)
        .map(|(a, f)| (a - f).abs())
        .sum();
    let n = insample.len() as f64;
    Ok((n - 1.0) / actuals.len() as f64 * abs_err / scale)
}

/// Mean rank of each method (rows) across series (columns); rank 1 is the
/// smallest error, tied errors share the mean of their ranks.
pub fn average_ranks(scores: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = scores.len();
    if k == 0 {
        return Err(ThetaError::Input("no methods to rank".into()));
    }
    let series = scores[0].len();
    if series == 0 {
        return Err(ThetaError::Input("no series to rank".into()));
    }
    for (i, row) in scores.iter().enumerate() {
        if row.len() != series {
            return Err(ThetaError::Input(format!(
                "method {i} has {} scores, expected {series}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(ThetaError::Input(format!(
                "missing score for method {i}, series {j}"
            )));
        }
    }
    let mut totals = vec![0.0; k];
    let mut order: Vec<usize> = (0..k).collect();
    #[allow(clippy::needless_range_loop)]
    for j in 0..series {
        order.sort_by(|&a, &b| scores[a][j].total_cmp(&scores[b][j]).then(a.cmp(&b)));
        let mut start = 0;
        while start < k {
            let mut end = start + 1;
            while end < k && scores[order[end]][j] == scores[order[start]][j] {
                end += 1;
            }
            // positions start..end hold ranks start+1..=end
            let rank = (start + 1 + end) as f64 / 2.0;
            for &m in &order[start..end] {
                totals[m] += rank;
            }
            start = end;
        }
    }
    Ok(totals.into_iter().map(|t| t / series as f64).collect())
}

/// Accuracy of one method on one series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesScore {
    pub series_id: String,
    pub method: String,
    pub group: FrequencyGroup,
    /// Percent, in `[0, 200]`.
    pub smape: f64,
    /// `None` when undefined (constant in-sample data).
    pub mase: Option<f64>,
    pub theta_hat: Option<f64>,
}

/// Mean errors over one group of series.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GroupStats {
    /// Series scored.
    pub count: usize,
    pub smape: Option<f64>,
    pub mase: Option<f64>,
    /// Series whose MASE was undefined and left out of the mean.
    pub mase_excluded: usize,
}

/// Aggregates for one method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub method: String,
    pub groups: BTreeMap<FrequencyGroup, GroupStats>,
    pub all: GroupStats,
    /// Series on which the method produced no forecast.
    pub failed: usize,
    pub elapsed: Duration,
    pub rank_smape: Option<f64>,
    pub rank_mase: Option<f64>,
}

/// Per-method, per-frequency accuracy table.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationTable {
    pub methods: Vec<MethodSummary>,
    /// Why ranks are missing, when they are.
    pub rank_note: Option<String>,
}

#[derive(Default)]
struct Acc {
    count: usize,
    smape: f64,
    mase: f64,
    mase_n: usize,
    excluded: usize,
}

impl Acc {
    fn add(&mut self, s: &SeriesScore) {
        self.count += 1;
        self.smape += s.smape;
        match s.mase {
            Some(v) => {
                self.mase += v;
                self.mase_n += 1;
            }
            None => self.excluded += 1,
        }
    }

    fn stats(&self) -> GroupStats {
        GroupStats {
            count: self.count,
            smape: (self.count > 0).then(|| self.smape / self.count as f64),
            mase: (self.mase_n > 0).then(|| self.mase / self.mase_n as f64),
            mase_excluded: self.excluded,
        }
    }
}

impl EvaluationTable {
    /// Builds the table. `scores` must be in a fixed order (dataset order,
    /// then method order) for bit-stable sums; `failed` and `elapsed` are
    /// indexed like `methods`; `series` is the number of dataset entries.
    pub fn build(
        methods: &[String],
        scores: &[SeriesScore],
        failed: &[usize],
        elapsed: &[Duration],
        series: usize,
    ) -> Self {
        let mut summaries: Vec<MethodSummary> = methods
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let mut all = Acc::default();
                let mut groups: BTreeMap<FrequencyGroup, Acc> = BTreeMap::new();
                for s in scores.iter().filter(|s| &s.method == name) {
                    all.add(s);
                    groups.entry(s.group).or_default().add(s);
                }
                MethodSummary {
                    method: name.clone(),
                    groups: groups.into_iter().map(|(g, a)| (g, a.stats())).collect(),
                    all: all.stats(),
                    failed: failed.get(i).copied().unwrap_or(0),
                    elapsed: elapsed.get(i).copied().unwrap_or_default(),
                    rank_smape: None,
                    rank_mase: None,
                }
            })
            .collect();

        let matrix = |pick: fn(&SeriesScore) -> Option<f64>| -> Vec<Vec<f64>> {
            methods
                .iter()
                .map(|name| {
                    scores
                        .iter()
                        .filter(|s| &s.method == name)
                        .map(|s| pick(s).unwrap_or(f64::NAN))
                        .collect()
                })
                .collect()
        };

        let mut rank_note = None;
        let complete = summaries.iter().all(|m| m.all.count == series);
        if !complete {
            rank_note = Some("ranks not computed: some methods failed on some series".to_string());
        } else if series > 0 {
            if let Ok(r) = average_ranks(&matrix(|s| Some(s.smape))) {
                for (m, r) in summaries.iter_mut().zip(r) {
                    m.rank_smape = Some(r);
                }
            }
            match average_ranks(&matrix(|s| s.mase)) {
                Ok(r) => {
                    for (m, r) in summaries.iter_mut().zip(r) {
                        m.rank_mase = Some(r);
                    }
                }
                Err(_) => {
                    rank_note =
                        Some("MASE ranks not computed: MASE undefined on some series".into());
                }
            }
        }
        EvaluationTable {
            methods: summaries,
            rank_note,
        }
    }

    pub fn method(&self, name: &str) -> Option<&MethodSummary> {
        self.methods.iter().find(|m| m.method == name)
    }

    /// Tables-style CSV: one row per (metric, method), columns per group,
    /// then All, counts and optionally wall time in minutes.
    pub fn to_csv(&self, include_timing: bool) -> String {
        let mut out = String::from("metric,method");
        for g in FrequencyGroup::ALL {
            let _ = write!(out, ",{g}");
        }
        out.push_str(",All,series,mase_excluded,failed,avg_rank");
        if include_timing {
            out.push_str(",time_min");
        }
        out.push('\n');
        let cell = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        for metric in ["sMAPE", "MASE"] {
            let pick = |s: &GroupStats| if metric == "sMAPE" { s.smape } else { s.mase };
            for m in &self.methods {
                let _ = write!(out, "{metric},{}", m.method);
                for g in FrequencyGroup::ALL {
                    let _ = write!(out, ",{}", cell(m.groups.get(&g).and_then(pick)));
                }
                let rank = if metric == "sMAPE" {
                    m.rank_smape
                } else {
                    m.rank_mase
                };
                let _ = write!(
                    out,
                    ",{},{},{},{},{}",
                    cell(pick(&m.all)),
                    m.all.count,
                    m.all.mase_excluded,
                    m.failed,
                    cell(rank)
                );
                if include_timing {
                    let _ = write!(out, ",{:.4}", m.elapsed.as_secs_f64() / 60.0);
                }
                out.push('\n');
            }
        }
        out
    }

    /// Human-readable rendering for terminals.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for metric in ["sMAPE", "MASE"] {
            let _ = writeln!(
                out,
                "{metric:<28}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>11}",
                "Yearly", "Quarterly", "Monthly", "Other", "All", "AvgRank", "Time(min)"
            );
            for m in &self.methods {
                let pick = |s: &GroupStats| if metric == "sMAPE" { s.smape } else { s.mase };
                let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.2}"));
                let _ = write!(out, "{:<28}", m.method);
                for g in FrequencyGroup::ALL {
                    let _ = write!(out, "{:>10}", fmt(m.groups.get(&g).and_then(pick)));
                }
                let rank = if metric == "sMAPE" {
                    m.rank_smape
                } else {
                    m.rank_mase
                };
                let _ = writeln!(
                    out,
                    "{:>10}{:>10}{:>11.2}",
                    fmt(pick(&m.all)),
                    fmt(rank),
                    m.elapsed.as_secs_f64() / 60.0
                );
            }
            out.push('\n');
        }
        if let Some(note) = &self.rank_note {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn smape_examples() {
        assert_eq!(smape(&[3.0, 4.0], &[3.0, 4.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(
            smape(&[100.0], &[50.0]).unwrap(),
            200.0 * 50.0 / 150.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            smape(&[1.0, 1.0], &[3.0, 1.0]).unwrap(),
            50.0,
            epsilon = 1e-12
        );
        assert_eq!(smape(&[0.0], &[0.0]).unwrap(), 0.0);
        assert!(matches!(
            smape(&[1.0], &[1.0, 2.0]),
            Err(ThetaError::Shape { .. })
        ));
    }

    #[test]
    fn mase_examples() {
        assert_eq!(mase(&[1.0, 2.0, 4.0], &[5.0], &[5.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(
            mase(&[1.0, 2.0, 3.0], &[4.0], &[3.0]).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            mase(&[0.0, 2.0, 0.0, 2.0], &[2.0, 2.0], &[0.0, 0.0]).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert!(matches!(
            mase(&[3.0, 3.0, 3.0], &[3.0], &[3.0]),
            Err(ThetaError::UndefinedMetric(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(average_ranks(&[vec![3.0, 1.0]]).unwrap(), vec![1.0]);
        assert_eq!(
            average_ranks(&[vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]]).unwrap(),
            vec![1.0, 2.0]
        );
        // series 1: A=1, B=2, C=3 -> 1,2,3
        // series 2: A=5, B=4, C=6 -> 2,1,3
        // series 3: A=2, B=2, C=1 -> 2.5,2.5,1
        // series 4: A=0, B=9, C=3 -> 1,3,2
        let table = vec![
            vec![1.0, 5.0, 2.0, 0.0],
            vec![2.0, 4.0, 2.0, 9.0],
            vec![3.0, 6.0, 1.0, 3.0],
        ];
        let r = average_ranks(&table).unwrap();
        assert_abs_diff_eq!(r[0], 6.5 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1], 8.5 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[2], 9.0 / 4.0, epsilon = 1e-15);
        // tie sharing rank 1.5
        let r = average_ranks(&[vec![1.0], vec![1.0], vec![2.0]]).unwrap();
        assert_eq!(r, vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn rank_input_errors() {
        assert!(average_ranks(&[]).is_err());
        assert!(average_ranks(&[vec![1.0, 2.0], vec![1.0]]).is_err());
        assert!(average_ranks(&[vec![1.0, f64::NAN]]).is_err());
    }

    fn score(
        id: &str,
        method: &str,
        group: FrequencyGroup,
        smape: f64,
        mase: Option<f64>,
    ) -> SeriesScore {
        SeriesScore {
            series_id: id.into(),
            method: method.into(),
            group,
            smape,
            mase,
            theta_hat: None,
        }
    }

    #[test]
    fn all_row_is_mean_over_series() {
        use FrequencyGroup::*;
        let scores = vec![
            score("a", "m", Yearly, 10.0, Some(1.0)),
            score("b", "m", Yearly, 20.0, Some(3.0)),
            score("c", "m", Monthly, 60.0, None),
        ];
        let t = EvaluationTable::build(&["m".into()], &scores, &[0], &[Duration::ZERO], 3);
        let m = t.method("m").unwrap();
        assert_eq!(m.all.smape, Some(30.0));
        assert_eq!(m.all.mase, Some(2.0));
        assert_eq!(m.all.mase_excluded, 1);
        assert_eq!(m.groups[&Yearly].smape, Some(15.0));
        assert_eq!(m.groups[&Monthly].mase, None);
        assert_eq!(m.rank_smape, Some(1.0));
        assert!(t.rank_note.is_some());
        let csv = t.to_csv(false);
        assert!(csv.starts_with("metric,method,Yearly,Quarterly,Monthly,Other,All,"));
        assert!(csv.contains("sMAPE,m,15,,60,,30,3,1,0,1\n"));
    }

    #[test]
    fn incomplete_matrix_has_no_ranks() {
        use FrequencyGroup::*;
        let scores = vec![
            score("a", "x", Other, 1.0, Some(1.0)),
            score("a", "y", Other, 2.0, Some(1.0)),
        ];
        let methods = vec!["x".to_string(), "y".to_string()];
        let t = EvaluationTable::build(&methods, &scores[..1], &[0, 1], &[Duration::ZERO; 2], 1);
        assert!(t.methods.iter().all(|m| m.rank_smape.is_none()));
        let t = EvaluationTable::build(&methods, &scores, &[0, 0], &[Duration::ZERO; 2], 1);
        assert_eq!(t.method("x").unwrap().rank_smape, Some(1.0));
        assert_eq!(t.method("y").unwrap().rank_mase, Some(1.5));
    }

    proptest! {
        #[test]
        fn smape_symmetric_and_bounded(
            pairs in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..30)
        ) {
            let (a, f): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let s = smape(&a, &f).unwrap();
            prop_assert!((0.0..=200.0).contains(&s));
            prop_assert_eq!(s, smape(&f, &a).unwrap());
        }

        #[test]
        fn mase_scale_free(
            insample in prop::collection::vec(-100f64..100.0, 2..30),
            pairs in prop::collection::vec((-100f64..100.0, -100f64..100.0), 1..10),
            c in 0.001f64..1000.0,
        ) {
            let (a, f): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            prop_assume!(insample.windows(2).any(|w| w[0] != w[1]));
            let base = mase(&insample, &a, &f).unwrap();
            let sc = |v: &[f64]| v.iter().map(|x| x * c).collect::<Vec<_>>();
            let scaled = mase(&sc(&insample), &sc(&a), &sc(&f)).unwrap();
            prop_assert!((base - scaled).abs() <= 1e-12 * base.max(1.0));
        }

        #[test]
        fn mean_rank_is_midpoint(table in (1usize..6, 1usize..12).prop_flat_map(|(k, s)| {
            prop::collection::vec(prop::collection::vec(0u8..5, s), k)
        })) {
            let table: Vec<Vec<f64>> = table.into_iter().map(|r| r.into_iter().map(f64::from).collect()).collect();
            let k = table.len() as f64;
            let r = average_ranks(&table).unwrap();
            let mean = r.iter().sum::<f64>() / k;
            prop_assert!((mean - (k + 1.0) / 2.0).abs() < 1e-12);
        }
    }
}
