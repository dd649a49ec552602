//! Shared building blocks for the iteration engines: finiteness guards, the
//! two projection half-steps every projection engine uses, and the common
//! run loop that assembles invariant-checked traces.

use crate::bifunction::Bifunction;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::sets::Set;
use crate::trace::{IterateTrace, RunOptions, StepRecord, StopRule, TraceRow, MEMBERSHIP_TOL};
use std::time::Instant;

pub(crate) fn ensure_finite(stage: &'static str, iteration: usize, v: &Vector) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { stage, iteration })
    }
}

pub(crate) fn check_membership(set: &Set, x: &Vector, iteration: usize) -> Result<()> {
    if set.contains(x, MEMBERSHIP_TOL) {
        return Ok(());
    }
    let distance = match set.project(x) {
        Ok(p) => p.dist(x),
        Err(_) => f64::NAN,
    };
    if iteration == 0 {
        Err(Error::StartNotFeasible { distance })
    } else {
        Err(Error::IterateNotFeasible {
            iteration,
            distance,
        })
    }
}

/// `A x` and `u = P_Q(A x)`.
pub(crate) fn project_image(q: &Set, a: &Matrix, x: &Vector, n: usize) -> Result<(Vector, Vector)> {
    let ax = a.apply(x);
    ensure_finite("A x", n, &ax)?;
    let u = q.project(&ax)?;
    ensure_finite("u = P_Q(A x)", n, &u)?;
    Ok((ax, u))
}

/// `z = P_C(x + mu * Aᵀ(y - A x))`.
pub(crate) fn backward_correction(
    c: &Set,
    a: &Matrix,
    x: &Vector,
    ax: &Vector,
    y: &Vector,
    mu: f64,
    n: usize,
) -> Result<Vector> {
    let pull = a.apply_transpose(&y.sub(ax));
    ensure_finite("Aᵀ(y - A x)", n, &pull)?;
    let z = c.project(&x.axpy(mu, &pull))?;
    ensure_finite("z = P_C(x + mu Aᵀ(y - A x))", n, &z)?;
    Ok(z)
}

/// `P_S(base - step * g)`.
pub(crate) fn projected_subgradient_step(
    set: &Set,
    base: &Vector,
    step: f64,
    g: &Vector,
    stage: &'static str,
    n: usize,
) -> Result<Vector> {
    let out = set.project(&base.axpy(-step, g))?;
    ensure_finite(stage, n, &out)?;
    Ok(out)
}

/// The loop shared by all engines: feasibility precheck on the start point,
/// per-iteration trace rows with the distance-growth check, and stop-rule
/// handling. The step algebra itself stays inside each engine's closure.
pub(crate) fn run_loop(
    c: &Set,
    known_solution: Option<&Vector>,
    diag_bifunction: Option<&Bifunction>,
    x0: &Vector,
    stop: &StopRule,
    opts: &RunOptions,
    mut step: impl FnMut(&Vector, usize) -> Result<(Vector, StepRecord)>,
) -> Result<IterateTrace> {
    check_membership(c, x0, 0)?;
    let start = Instant::now();
    let mut x = x0.clone();
    let mut rows = Vec::with_capacity(stop.max_iter.min(4096));
    let mut d_current = known_solution.map(|s| x.dist_sq(s));

    for n in 0..stop.max_iter {
        let (x_next, rec) = step(&x, n)?;
        let d_next = known_solution.map(|s| x_next.dist_sq(s));
        let fejer_violation = match (d_current, d_next) {
            (Some(before), Some(after)) => {
                Some((after - before - (1.0 + rec.mu) * rec.delta).max(0.0))
            }
            _ => None,
        };
        let f_toward_solution = match (known_solution, diag_bifunction) {
            (Some(sol), Some(f)) => f.eval(&rec.z, sol).ok(),
            _ => None,
        };
        rows.push(TraceRow {
            n,
            x: opts.record_iterates.then(|| x.clone()),
            d: d_current,
            residual_split: rec.residual_split,
            residual_step: rec.residual_step,
            gamma: rec.gamma,
            alpha: rec.alpha,
            delta: rec.delta,
            fejer_violation,
            f_toward_solution,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        let stop_now = stop.d_tol.zip(d_next).is_some_and(|(tol, d)| d <= tol)
            || stop
                .residual_tol
                .is_some_and(|tol| rec.residual_split.max(rec.residual_step) <= tol);
        x = x_next;
        d_current = d_next;
        if stop_now {
            break;
        }
    }

    Ok(IterateTrace {
        final_d: d_current,
        final_x: x,
        rows,
    })
}
