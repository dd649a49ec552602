//! Trace serialization (CSV) and machine-readable run summaries (JSON).
//!
//! The per-run CSV schema is fixed, in this column order:
//!
//! ```text
//! n,D_n,residual_split,residual_step,gamma_n,alpha_n,delta_n,fejer_violation,elapsed_ms
//! ```
//!
//! `D_n` and `fejer_violation` are empty when no solution is known. With
//! timing excluded the `elapsed_ms` column is dropped entirely, which makes
//! repeated runs byte-identical.

use crate::trace::{IterateTrace, FEJER_TOL};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Render one float with shortest-round-trip formatting.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn trace_csv(trace: &IterateTrace, include_timing: bool) -> String {
    let mut out = String::new();
    out.push_str("n,D_n,residual_split,residual_step,gamma_n,alpha_n,delta_n,fejer_violation");
    if include_timing {
        out.push_str(",elapsed_ms");
    }
    out.push('\n');
    for row in &trace.rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.n,
            fmt_opt(row.d),
            fmt_f64(row.residual_split),
            fmt_f64(row.residual_step),
            fmt_f64(row.gamma),
            fmt_f64(row.alpha),
            fmt_f64(row.delta),
            fmt_opt(row.fejer_violation),
        );
        if include_timing {
            let _ = write!(out, ",{}", fmt_f64(row.elapsed_ms));
        }
        out.push('\n');
    }
    out
}

/// Aligned distance columns for several runs over one instance: header
/// `n,D_<name>...`; shorter runs leave trailing cells empty.
pub fn combined_d_csv(names: &[String], traces: &[&IterateTrace]) -> String {
    assert_eq!(names.len(), traces.len());
    let mut out = String::from("n");
    for name in names {
        let _ = write!(out, ",D_{name}");
    }
    out.push('\n');
    let rows = traces.iter().map(|t| t.rows.len()).max().unwrap_or(0);
    for n in 0..rows {
        let _ = write!(out, "{n}");
        for t in traces {
            let cell = t.rows.get(n).and_then(|r| r.d);
            let _ = write!(out, ",{}", fmt_opt(cell));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummaryReport {
    pub algorithm: String,
    pub seed: Option<u64>,
    pub schedule: String,
    pub certified_schedule: bool,
    pub iterations: usize,
    pub final_d: Option<f64>,
    pub final_residual_split: Option<f64>,
    pub final_residual_step: Option<f64>,
    /// Total wall clock; `None` when timing output is suppressed.
    pub wall_ms: Option<f64>,
    /// Rows whose distance-growth check exceeded the tolerance.
    pub invariant_violations: usize,
    /// Partial-sum sanity warnings for uncertified schedules; empty for
    /// certified ones.
    pub schedule_warnings: Vec<String>,
}

impl SummaryReport {
    pub fn from_trace(
        algorithm: impl Into<String>,
        seed: Option<u64>,
        schedule: impl Into<String>,
        certified_schedule: bool,
        trace: &IterateTrace,
        include_timing: bool,
    ) -> Self {
        let last = trace.rows.last();
        SummaryReport {
            algorithm: algorithm.into(),
            seed,
            schedule: schedule.into(),
            certified_schedule,
            iterations: trace.iterations(),
            final_d: trace.final_d,
            final_residual_split: last.map(|r| r.residual_split),
            final_residual_step: last.map(|r| r.residual_step),
            wall_ms: if include_timing {
                last.map(|r| r.elapsed_ms)
            } else {
                None
            },
            invariant_violations: trace.violation_count(FEJER_TOL),
            schedule_warnings: Vec::new(),
        }
    }
}

/// Comparison of several algorithms on one instance against a distance
/// threshold. Iteration counts are the primary comparable; wall-clock
/// rankings are advisory (hardware-dependent) and omitted when timing is
/// suppressed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompareReport {
    pub d_threshold: f64,
    pub runs: Vec<CompareRun>,
    pub ranking_by_iterations: Vec<String>,
    pub ranking_by_time: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompareRun {
    pub summary: SummaryReport,
    pub iterations_to_threshold: Option<usize>,
    pub ms_to_threshold: Option<f64>,
}

pub fn compare_report(
    names: &[String],
    summaries: Vec<SummaryReport>,
    traces: &[&IterateTrace],
    d_threshold: f64,
    include_timing: bool,
) -> CompareReport {
    let runs: Vec<CompareRun> = summaries
        .into_iter()
        .zip(traces)
        .map(|(summary, trace)| CompareRun {
            iterations_to_threshold: trace.iterations_to_d(d_threshold),
            ms_to_threshold: if include_timing {
                trace.ms_to_d(d_threshold)
            } else {
                None
            },
            summary,
        })
        .collect();

    let mut by_iter: Vec<(usize, Option<usize>)> = runs
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.iterations_to_threshold))
        .collect();
    // Runs that never reach the threshold rank last.
    by_iter.sort_by_key(|(_, it)| it.unwrap_or(usize::MAX));
    let ranking_by_iterations = by_iter.iter().map(|(i, _)| names[*i].clone()).collect();

    let ranking_by_time = include_timing.then(|| {
        let mut by_time: Vec<(usize, Option<f64>)> = runs
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.ms_to_threshold))
            .collect();
        by_time.sort_by(|(_, a), (_, b)| {
            a.unwrap_or(f64::INFINITY)
                .partial_cmp(&b.unwrap_or(f64::INFINITY))
                .unwrap()
        });
        by_time.iter().map(|(i, _)| names[*i].clone()).collect()
    });

    CompareReport {
        d_threshold,
        runs,
        ranking_by_iterations,
        ranking_by_time,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;
    use crate::trace::TraceRow;

    fn toy_trace(ds: &[f64]) -> IterateTrace {
        IterateTrace {
            rows: ds
                .iter()
                .enumerate()
                .map(|(n, &d)| TraceRow {
                    n,
                    x: None,
                    d: Some(d),
                    residual_split: 0.5,
                    residual_step: 0.25,
                    gamma: 0.1,
                    alpha: 0.2,
                    delta: 0.01,
                    fejer_violation: Some(0.0),
                    f_toward_solution: None,
                    elapsed_ms: n as f64,
                })
                .collect(),
            final_x: Vector::zeros(1),
            final_d: ds.last().map(|d| d / 2.0),
        }
    }

    #[test]
    fn csv_schema_and_timing_column() {
        let trace = toy_trace(&[4.0, 1.0]);
        let with = trace_csv(&trace, true);
        let without = trace_csv(&trace, false);
        assert!(with.starts_with(
            "n,D_n,residual_split,residual_step,gamma_n,alpha_n,delta_n,fejer_violation,elapsed_ms\n"
        ));
        assert!(without.starts_with(
            "n,D_n,residual_split,residual_step,gamma_n,alpha_n,delta_n,fejer_violation\n"
        ));
        assert_eq!(without.lines().count(), 3);
        assert!(without
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("0,4,0.5,0.25,0.1,0.2,0.01,0"));
    }

    #[test]
    fn combined_csv_aligns_and_pads() {
        let t1 = toy_trace(&[4.0, 1.0, 0.5]);
        let t2 = toy_trace(&[4.0]);
        let csv = combined_d_csv(&["pm".into(), "pspm".into()], &[&t1, &t2]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,D_pm,D_pspm");
        assert_eq!(lines[1], "0,4,4");
        assert_eq!(lines[2], "1,1,");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn ranking_places_non_reaching_runs_last() {
        let fast = toy_trace(&[4.0, 0.5]);
        let never = toy_trace(&[4.0, 3.9]);
        let s = |name: &str, t: &IterateTrace| {
            SummaryReport::from_trace(name, None, "sched", true, t, true)
        };
        let report = compare_report(
            &["never".into(), "fast".into()],
            vec![s("never", &never), s("fast", &fast)],
            &[&never, &fast],
            1.0,
            true,
        );
        assert_eq!(report.ranking_by_iterations, vec!["fast", "never"]);
    }
}
