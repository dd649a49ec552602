//! Certified divergence runs.
//!
//! Two fixed planar instances show that the projection method's convergence
//! hypotheses are sharp:
//!
//! - the rotation instance (antisymmetric bifunction, whole-space sets)
//!   satisfies pseudomonotonicity but not the paramonotonicity condition,
//!   and every iteration strictly grows `‖x_n‖`;
//! - the empty-solution instance (indicator bifunctions over disjoint sets)
//!   has no solution at all, and the first coordinate grows without bound.
//!
//! Each runner executes the actual engine and, independently, the
//! closed-form recursion the instance admits, comparing the two
//! trajectories per step and checking the per-step growth inequalities with
//! strict float comparisons.

use crate::error::Result;
use crate::generator::{make_empty_solution_instance, make_rotation_instance};
use crate::linalg::Vector;
use crate::pm::pm_step;
use crate::schedule::ParamSchedule;
use crate::trace::{IterateTrace, TraceRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every per-step inequality held.
    Pass,
    /// At least one failed; see `failures`.
    Fail,
    /// The run started at the fixed point and never moved, so the growth
    /// inequalities are vacuous.
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub trace: IterateTrace,
    pub verdict: Verdict,
    pub steps_checked: usize,
    /// Largest per-step distance between the engine trajectory and the
    /// independent closed-form trajectory.
    pub max_closed_form_gap: f64,
    pub failures: Vec<String>,
}

/// One step of the closed-form rotation recursion with the given step
/// sizes: `x' = (a x₁ + b x₂, -b x₁ + a x₂)` with `a = 1 - μαγ`,
/// `b = μγ + α`.
pub fn rotation_closed_form_step(x: &Vector, mu: f64, gamma: f64, alpha: f64) -> Vector {
    let a = 1.0 - mu * alpha * gamma;
    let b = mu * gamma + alpha;
    Vector(vec![a * x[0] + b * x[1], -b * x[0] + a * x[1]])
}

/// Fully self-driven closed-form rotation step: derives the step sizes the
/// engine would compute from the current point, then applies the map.
/// Returns the next point and the `(a, b)` coefficients.
fn rotation_self_driven_step(
    x: &Vector,
    rho: f64,
    beta: f64,
    mu: f64,
) -> (Vector, f64, f64, f64, f64) {
    // On this instance u = x, ‖w‖ = ‖x‖, and ‖g‖ = ‖z‖ with
    // z = (x₁ + μγ x₂, x₂ - μγ x₁).
    let gamma = beta / rho.max(x.norm());
    let z = Vector(vec![x[0] + mu * gamma * x[1], x[1] - mu * gamma * x[0]]);
    let alpha = beta / rho.max(z.norm());
    let a = 1.0 - mu * alpha * gamma;
    let b = mu * gamma + alpha;
    (
        Vector(vec![a * x[0] + b * x[1], -b * x[0] + a * x[1]]),
        a,
        b,
        gamma,
        alpha,
    )
}

const CLOSED_FORM_AGREEMENT: f64 = 1e-10;

/// Run the rotation instance for `n_steps` from `x0`, checking per step that
/// the engine matches the closed form, that `a² + b² > 1` (recomputed from
/// `a` and `b` directly), and that `‖x_{n+1}‖ > ‖x_n‖` strictly.
pub fn run_rotation_counterexample(
    x0: &Vector,
    sched: &ParamSchedule,
    n_steps: usize,
) -> Result<CounterexampleReport> {
    let inst = make_rotation_instance();
    let mut failures = Vec::new();
    let mut max_gap = 0.0_f64;
    let mut x = x0.clone();
    let mut x_closed = x0.clone();
    let started_at_solution = x0.norm() == 0.0;
    let mut rows = Vec::with_capacity(n_steps);
    let start = std::time::Instant::now();

    for n in 0..n_steps {
        let (x_next, rec) = pm_step(&inst, &x, n, sched)?;
        let params = sched.validate_at(n)?;
        let (xc_next, a, b, _, _) =
            rotation_self_driven_step(&x_closed, params.rho, params.beta, params.mu);

        // Engine vs closed form, each evolving its own trajectory.
        let gap = x_next.dist(&xc_next);
        max_gap = max_gap.max(gap);
        if gap > CLOSED_FORM_AGREEMENT {
            failures.push(format!(
                "step {n}: engine and closed form disagree by {gap:.3e}"
            ));
        }
        if !started_at_solution {
            if !(a * a + b * b > 1.0) {
                failures.push(format!(
                    "step {n}: a² + b² = {} is not above 1",
                    a * a + b * b
                ));
            }
            if !(x_next.norm_sq() > x.norm_sq()) {
                failures.push(format!(
                    "step {n}: ‖x‖² did not strictly increase ({} -> {})",
                    x.norm_sq(),
                    x_next.norm_sq()
                ));
            }
        } else if x_next.norm() != 0.0 {
            failures.push(format!("step {n}: fixed point moved to {x_next:?}"));
        }

        let d = inst.known_solution.as_ref().map(|s| x.dist_sq(s));
        rows.push(TraceRow {
            n,
            x: Some(x.clone()),
            d,
            residual_split: rec.residual_split,
            residual_step: rec.residual_step,
            gamma: rec.gamma,
            alpha: rec.alpha,
            delta: rec.delta,
            fejer_violation: None,
            f_toward_solution: None,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        x = x_next;
        x_closed = xc_next;
    }

    let final_d = inst.known_solution.as_ref().map(|s| x.dist_sq(s));
    let verdict = if !failures.is_empty() {
        Verdict::Fail
    } else if started_at_solution {
        Verdict::NotApplicable
    } else {
        Verdict::Pass
    };
    Ok(CounterexampleReport {
        trace: IterateTrace {
            rows,
            final_x: x,
            final_d,
        },
        verdict,
        steps_checked: n_steps,
        max_closed_form_gap: max_gap,
        failures,
    })
}

/// Run the empty-solution instance for `n_steps` from `(x₁₀, 0)`,
/// `x₁₀ ≥ 1`, with the split step fixed at 1/2. Checks per step, with
/// strict float comparisons, that the image projection satisfies
/// `u₁ > x₁ + 1/(4 x₁²)`, that the next iterate satisfies
/// `x₁' > x₁ + 1/(8 x₁²)`, and that `‖x‖` strictly increases.
pub fn run_empty_solution_counterexample(
    x0: &Vector,
    n_steps: usize,
) -> Result<CounterexampleReport> {
    let inst = make_empty_solution_instance();
    // Schedule choices are immaterial here (both subgradients are zero) as
    // long as they are valid; the split step must be 1/2 ∈ (0, 1/‖A‖²).
    let norm = inst.certified_norm()?;
    let sched = ParamSchedule::inverse_power_preset(0.7, norm)?.with_mu(0.5)?;

    let mut failures = Vec::new();
    let mut x = x0.clone();
    let mut rows = Vec::with_capacity(n_steps);
    let start = std::time::Instant::now();

    for n in 0..n_steps {
        let (x_next, rec) = pm_step(&inst, &x, n, &sched)?;
        let x1 = x[0];
        let u1 = rec.u[0];
        if !(u1 > x1 + 1.0 / (4.0 * x1 * x1)) {
            failures.push(format!(
                "step {n}: u₁ = {u1} does not exceed x₁ + 1/(4x₁²) = {}",
                x1 + 1.0 / (4.0 * x1 * x1)
            ));
        }
        if !(x_next[0] > x1 + 1.0 / (8.0 * x1 * x1)) {
            failures.push(format!(
                "step {n}: x₁' = {} does not exceed x₁ + 1/(8x₁²) = {}",
                x_next[0],
                x1 + 1.0 / (8.0 * x1 * x1)
            ));
        }
        if !(x_next.norm() > x.norm()) {
            failures.push(format!("step {n}: ‖x‖ did not strictly increase"));
        }
        // The engine path must reproduce the closed-form midpoint update
        // x' = ((x₁ + u₁)/2, 0).
        let closed = 0.5 * (x1 + u1);
        if (x_next[0] - closed).abs() > CLOSED_FORM_AGREEMENT || x_next[1] != 0.0 {
            failures.push(format!(
                "step {n}: iterate ({}, {}) differs from the midpoint form ({closed}, 0)",
                x_next[0], x_next[1]
            ));
        }

        rows.push(TraceRow {
            n,
            x: Some(x.clone()),
            d: None,
            residual_split: rec.residual_split,
            residual_step: rec.residual_step,
            gamma: rec.gamma,
            alpha: rec.alpha,
            delta: rec.delta,
            fejer_violation: None,
            f_toward_solution: None,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        x = x_next;
    }

    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CounterexampleReport {
        trace: IterateTrace {
            rows,
            final_x: x,
            final_d: None,
        },
        verdict,
        steps_checked: n_steps,
        max_closed_form_gap: 0.0,
        failures,
    })
}

/// Convenience used by the CLI and the self-check: the stock schedule for
/// the rotation run.
pub fn rotation_default_schedule() -> Result<ParamSchedule> {
    let norm = make_rotation_instance().certified_norm()?;
    ParamSchedule::inverse_power_preset(0.7, norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_map_matches_hand_computation() {
        // mu = 0.5, gamma = 0.5, alpha = 0.2 from (1, 0):
        // a = 0.95, b = 0.45, image (0.95, -0.45), norm² = 1.105.
        let x = Vector(vec![1.0, 0.0]);
        let next = rotation_closed_form_step(&x, 0.5, 0.5, 0.2);
        assert!((next[0] - 0.95).abs() < 1e-15);
        assert!((next[1] + 0.45).abs() < 1e-15);
        assert!((next.norm_sq() - 1.105).abs() < 1e-15);
        assert!(next.norm_sq() > x.norm_sq());
    }

    #[test]
    fn rotation_norms_strictly_increase() {
        let sched = rotation_default_schedule().unwrap();
        let report = run_rotation_counterexample(&Vector(vec![1.0, 0.0]), &sched, 500).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.failures);
        assert!(report.max_closed_form_gap <= 1e-10);
        assert!(report.trace.final_x.norm() > 1.0);
    }

    #[test]
    fn rotation_from_origin_is_degenerate() {
        let sched = rotation_default_schedule().unwrap();
        let report = run_rotation_counterexample(&Vector::zeros(2), &sched, 50).unwrap();
        assert_eq!(report.verdict, Verdict::NotApplicable);
        assert_eq!(report.trace.final_x, Vector::zeros(2));
    }

    #[test]
    fn empty_solution_first_step_bound() {
        let report = run_empty_solution_counterexample(&Vector(vec![1.0, 0.0]), 1).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.failures);
        // x₁' > 1 + 1/8
        assert!(report.trace.final_x[0] > 1.125);
    }

    #[test]
    fn empty_solution_run_is_monotone_and_unbounded_in_trend() {
        let report = run_empty_solution_counterexample(&Vector(vec![1.0, 0.0]), 1000).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.failures);
        // Cubic-root growth comfortably doubles the start within the budget.
        assert!(report.trace.final_x[0] > 2.0, "{:?}", report.trace.final_x);
    }
}
