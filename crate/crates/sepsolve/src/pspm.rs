//! Projected subgradient + proximal baseline.
//!
//! One iteration from `x_n ∈ C`:
//!
//! 1. pick `w_n ∈ ∂_ε f(x_n, ·)(x_n)`, step `α_n = β_n / max{ρ_n, ‖w_n‖}`,
//!    and set `y_n = P_C(x_n - α_n w_n)`;
//! 2. `x_{n+1} = P_C(y_n - μ_n Aᵀ(A y_n - T_r(A y_n)))` where `T_r` is the
//!    resolvent of the image-side bifunction, evaluated through the box QP
//!    solver.
//!
//! This method needs the image-side bifunction to admit the quadratic
//! proximal reduction (equal coefficient matrices) and a box `Q`; it refuses
//! anything else. Its admissible split step is `0 < a ≤ μ_n ≤ b < 2/‖A‖²`,
//! twice as wide as the projection-only method's.
//!
//! Trace conventions for this engine: `u` records the resolvent point
//! `T_r(A y_n)`, `residual_split = ‖A y_n - T_r(A y_n)‖`,
//! `residual_step = ‖x_{n+1} - y_n‖`, `z = y_n`, and `gamma = 0` (there is
//! no Q-side subgradient step).

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::problem::SepInstance;
use crate::qp::{solve_resolvent, RESOLVENT_QP_TOL};
use crate::schedule::ParamSchedule;
use crate::sets::{BoxSet, Set};
use crate::steps::{check_membership, ensure_finite, projected_subgradient_step, run_loop};
use crate::trace::{IterateTrace, RunOptions, StepRecord, StopRule};

fn resolvent_box(inst: &SepInstance) -> Result<&BoxSet> {
    match &inst.q {
        Set::Box(b) => Ok(b),
        _ => Err(Error::AlgorithmMismatch {
            algo: "pspm",
            detail: "the proximal step needs a box Q".into(),
        }),
    }
}

/// One iteration. `r > 0` is the resolvent parameter.
pub fn pspm_step(
    inst: &SepInstance,
    x: &Vector,
    n: usize,
    sched: &ParamSchedule,
    r: f64,
) -> Result<(Vector, StepRecord)> {
    let p = sched.validate_at(n)?;
    check_membership(&inst.c, x, n.max(1))?;
    let q_box = resolvent_box(inst)?;

    let w = inst.f_c.diagonal_subgradient(x, p.eps)?;
    ensure_finite("w ∈ ∂f(x,·)(x)", n, &w)?;
    let alpha = p.beta / p.rho.max(w.norm());
    let y = projected_subgradient_step(&inst.c, x, alpha, &w, "y = P_C(x - alpha w)", n)?;

    let ay = inst.a.apply(&y);
    ensure_finite("A y", n, &ay)?;
    let t = solve_resolvent(&inst.f_q, r, &ay, q_box, RESOLVENT_QP_TOL)?;
    ensure_finite("T_r(A y)", n, &t)?;
    let mismatch = ay.sub(&t);
    let pull = inst.a.apply_transpose(&mismatch);
    let x_next = inst.c.project(&y.axpy(-p.mu, &pull))?;
    ensure_finite("x' = P_C(y - mu Aᵀ(A y - T_r(A y)))", n, &x_next)?;

    let residual_split = mismatch.norm();
    let residual_step = x_next.sub(&y).norm();
    Ok((
        x_next,
        StepRecord {
            u: t,
            y: y.clone(),
            z: y,
            subgradients_q: Vec::new(),
            subgradients_c: vec![w],
            gamma: 0.0,
            alpha,
            mu: p.mu,
            delta: p.delta(),
            residual_split,
            residual_step,
        },
    ))
}

pub fn run_pspm(
    inst: &SepInstance,
    x0: &Vector,
    sched: &ParamSchedule,
    r: f64,
    stop: &StopRule,
    opts: &RunOptions,
) -> Result<IterateTrace> {
    if !(r > 0.0) {
        return Err(Error::Validation {
            field: "resolvent_r".into(),
            detail: format!("must be strictly positive, got {r}"),
        });
    }
    // Upfront refusals: resolvent availability and the wider split-step
    // bound mu < 2/‖A‖².
    resolvent_box(inst)?;
    if !matches!(&inst.f_q, crate::bifunction::Bifunction::Quadratic { .. }) {
        return Err(Error::AlgorithmMismatch {
            algo: "pspm",
            detail: "the image-side bifunction must be quadratic with equal coefficients".into(),
        });
    }
    let norm = inst.certified_norm()?;
    let (_, mu_upper) = sched.mu_bounds();
    if mu_upper * norm * norm >= 2.0 {
        return Err(Error::AlgorithmMismatch {
            algo: "pspm",
            detail: format!(
                "schedule allows mu up to {mu_upper}, which is not below 2/||A||^2 = {}",
                2.0 / (norm * norm)
            ),
        });
    }
    run_loop(
        &inst.c,
        inst.known_solution.as_ref(),
        Some(&inst.f_c),
        x0,
        stop,
        opts,
        |x, n| pspm_step(inst, x, n, sched, r),
    )
}
