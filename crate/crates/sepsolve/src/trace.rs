//! Convergence traces, stop rules, and the per-step record.
//!
//! Every run produces an [`IterateTrace`]: one row per executed iteration
//! carrying the squared distance to the known solution (when there is one),
//! the split and step residuals, the applied step sizes, the perturbation
//! budget `δ_n`, and the distance-growth check
//! `max(0, D_{n+1} - D_n - (1+μ_n) δ_n)` — the quantity that must stay at
//! zero (up to float noise) for methods with a known solution on monotone
//! instances.

use crate::linalg::Vector;

/// Violation threshold for the distance-growth check. Absolute, sized for
/// float accumulation over hundreds of iterations at unit-scale data.
pub const FEJER_TOL: f64 = 1e-9;

/// Membership tolerance for feasibility prechecks on iterates.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// Full intermediates of one iteration of any of the engines.
#[derive(Clone, Debug)]
pub struct StepRecord {
    /// `u = P_Q(A x)` for the projection engines; the resolvent image for
    /// the proximal baseline.
    pub u: Vector,
    /// The averaged/projected point on the `Q` side.
    pub y: Vector,
    /// The corrected point pulled back to `C`.
    pub z: Vector,
    /// Subgradients taken on the `Q` side (one per component; empty for the
    /// proximal baseline).
    pub subgradients_q: Vec<Vector>,
    /// Subgradients taken on the `C` side (one per component).
    pub subgradients_c: Vec<Vector>,
    /// Effective `Q`-side step size (0 when the method has none).
    pub gamma: f64,
    /// Effective `C`-side step size.
    pub alpha: f64,
    pub mu: f64,
    /// `δ_n = 2 β_n ε_n / ρ_n + 2 β_n²`.
    pub delta: f64,
    /// `‖u - A x‖` (resolvent mismatch `‖A y - T(A y)‖` for the baseline).
    pub residual_split: f64,
    /// `‖x_{n+1} - z‖` (`‖x_{n+1} - y‖` for the baseline).
    pub residual_step: f64,
}

#[derive(Clone, Debug)]
pub struct TraceRow {
    pub n: usize,
    /// The iterate at the start of the step, stored only on request.
    pub x: Option<Vector>,
    /// `D_n = ‖x_n - x*‖²` when the solution is known.
    pub d: Option<f64>,
    pub residual_split: f64,
    pub residual_step: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub delta: f64,
    /// `max(0, D_{n+1} - D_n - (1+μ_n) δ_n)` when the solution is known.
    pub fejer_violation: Option<f64>,
    /// Diagnostic only, never asserted: `f(z_n, x*)` when the solution is
    /// known and the oracle can evaluate it.
    pub f_toward_solution: Option<f64>,
    /// Cumulative wall clock since the start of the run.
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug)]
pub struct IterateTrace {
    pub rows: Vec<TraceRow>,
    pub final_x: Vector,
    /// `‖x_N - x*‖²` for the final iterate, when the solution is known.
    pub final_d: Option<f64>,
}

impl IterateTrace {
    pub fn iterations(&self) -> usize {
        self.rows.len()
    }

    pub fn violation_count(&self, tol: f64) -> usize {
        self.rows
            .iter()
            .filter(|r| r.fejer_violation.is_some_and(|v| v > tol))
            .count()
    }

    pub fn max_fejer_violation(&self) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| r.fejer_violation)
            .fold(0.0, f64::max)
    }

    /// `D_0` when recorded.
    pub fn initial_d(&self) -> Option<f64> {
        self.rows.first().and_then(|r| r.d)
    }

    /// Smallest recorded squared distance, including the final iterate.
    pub fn best_d(&self) -> Option<f64> {
        let mut best = self.final_d;
        for r in &self.rows {
            if let Some(d) = r.d {
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        best
    }

    /// First iteration index whose recorded distance is at or below the
    /// threshold (the final iterate counts as index `len`).
    pub fn iterations_to_d(&self, threshold: f64) -> Option<usize> {
        for r in &self.rows {
            if r.d.is_some_and(|d| d <= threshold) {
                return Some(r.n);
            }
        }
        if self.final_d.is_some_and(|d| d <= threshold) {
            return Some(self.rows.len());
        }
        None
    }

    /// Cumulative time at the first iteration meeting the threshold.
    pub fn ms_to_d(&self, threshold: f64) -> Option<f64> {
        for r in &self.rows {
            if r.d.is_some_and(|d| d <= threshold) {
                return Some(r.elapsed_ms);
            }
        }
        if self.final_d.is_some_and(|d| d <= threshold) {
            return self.rows.last().map(|r| r.elapsed_ms);
        }
        None
    }

    pub fn residual_split_series(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.residual_split).collect()
    }

    pub fn residual_step_series(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.residual_step).collect()
    }
}

/// Decay proxy for a vanishing residual series: the maximum over the last
/// 10% of iterations must not exceed ten times the 10th-percentile value of
/// the whole series.
pub fn decile_decay_ok(values: &[f64]) -> bool {
    if values.len() < 10 {
        return true;
    }
    let tail_start = values.len() - values.len() / 10;
    let tail_max = values[tail_start..].iter().fold(0.0_f64, |m, &v| m.max(v));
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let decile = sorted[(values.len() - 1) / 10];
    tail_max <= 10.0 * decile
}

/// When to stop a run. `max_iter` always applies; the distance rule needs a
/// known solution; the residual rule is offered but does not certify
/// membership in the solution set (small residuals are necessary, not
/// sufficient).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StopRule {
    pub max_iter: usize,
    pub d_tol: Option<f64>,
    pub residual_tol: Option<f64>,
}

impl StopRule {
    pub fn max_iter(max_iter: usize) -> Self {
        StopRule {
            max_iter,
            d_tol: None,
            residual_tol: None,
        }
    }

    pub fn with_d_tol(mut self, tol: f64) -> Self {
        self.d_tol = Some(tol);
        self
    }

    pub fn with_residual_tol(mut self, tol: f64) -> Self {
        self.residual_tol = Some(tol);
        self
    }
}

/// Per-run knobs that do not affect the iteration itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Store `x_n` in every row (memory-heavy for large dimensions).
    pub record_iterates: bool,
}
