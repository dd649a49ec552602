//! Parallel method for split common equilibrium problems: every component
//! on each side must be solved simultaneously.
//!
//! Unlike the sum-decomposed variant, each component gets its own step size
//! `γ^j_n = β_n / max{ρ_n, ‖w^j_n‖}` and the component results are combined
//! with caller-supplied convex weights (`θ` on the image side, `τ` on the
//! domain side). Weights may vary per iteration; the runner here keeps them
//! constant.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::problem::ScepInstance;
use crate::schedule::ParamSchedule;
use crate::steps::{
    backward_correction, check_membership, ensure_finite, project_image,
    projected_subgradient_step, run_loop,
};
use crate::trace::{IterateTrace, RunOptions, StepRecord, StopRule};

const WEIGHT_SUM_TOL: f64 = 1e-12;

fn validate_weights(weights: &[f64], count: usize, name: &'static str) -> Result<()> {
    if weights.len() != count {
        return Err(Error::WeightsInvalid {
            detail: format!("{name}: expected {count} weights, got {}", weights.len()),
        });
    }
    for (i, &w) in weights.iter().enumerate() {
        if !(w > 0.0 && w <= 1.0 && w.is_finite()) {
            return Err(Error::WeightsInvalid {
                detail: format!("{name}[{i}] = {w} is outside (0, 1]"),
            });
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::WeightsInvalid {
            detail: format!("{name} sums to {sum}, expected 1"),
        });
    }
    Ok(())
}

fn weighted_combination(points: &[Vector], weights: &[f64]) -> Vector {
    let mut acc = points[0].scale(weights[0]);
    for (p, &w) in points[1..].iter().zip(&weights[1..]) {
        acc = acc.axpy(w, p);
    }
    acc
}

/// One iteration. `theta` weights the image-side components, `tau` the
/// domain-side components; each must be positive and sum to one.
pub fn scep_step(
    inst: &ScepInstance,
    x: &Vector,
    n: usize,
    sched: &ParamSchedule,
    theta: &[f64],
    tau: &[f64],
) -> Result<(Vector, StepRecord)> {
    let p = sched.validate_at(n)?;
    validate_weights(theta, inst.components_q.len(), "theta")?;
    validate_weights(tau, inst.components_c.len(), "tau")?;
    check_membership(&inst.c, x, n.max(1))?;

    let (ax, u) = project_image(&inst.q, &inst.a, x, n)?;
    let mut ws = Vec::with_capacity(inst.components_q.len());
    let mut ys = Vec::with_capacity(inst.components_q.len());
    let mut gamma_avg = 0.0;
    for (f, &weight) in inst.components_q.iter().zip(theta) {
        let w = f.diagonal_subgradient(&u, p.eps)?;
        ensure_finite("w_j ∈ ∂F_j(u,·)(u)", n, &w)?;
        let gamma_j = p.beta / p.rho.max(w.norm());
        ys.push(projected_subgradient_step(
            &inst.q,
            &u,
            gamma_j,
            &w,
            "y_j = P_Q(u - gamma_j w_j)",
            n,
        )?);
        ws.push(w);
        gamma_avg += weight * gamma_j;
    }
    let y = weighted_combination(&ys, theta);

    let z = backward_correction(&inst.c, &inst.a, x, &ax, &y, p.mu, n)?;

    let mut gs = Vec::with_capacity(inst.components_c.len());
    let mut xs = Vec::with_capacity(inst.components_c.len());
    let mut alpha_avg = 0.0;
    for (f, &weight) in inst.components_c.iter().zip(tau) {
        let g = f.diagonal_subgradient(&z, p.eps)?;
        ensure_finite("g_i ∈ ∂f_i(z,·)(z)", n, &g)?;
        let alpha_i = p.beta / p.rho.max(g.norm());
        xs.push(projected_subgradient_step(
            &inst.c,
            &z,
            alpha_i,
            &g,
            "x_i = P_C(z - alpha_i g_i)",
            n,
        )?);
        gs.push(g);
        alpha_avg += weight * alpha_i;
    }
    let x_next = weighted_combination(&xs, tau);

    let residual_split = u.sub(&ax).norm();
    let residual_step = x_next.sub(&z).norm();
    Ok((
        x_next,
        StepRecord {
            u,
            y,
            z,
            subgradients_q: ws,
            subgradients_c: gs,
            gamma: gamma_avg,
            alpha: alpha_avg,
            mu: p.mu,
            delta: p.delta(),
            residual_split,
            residual_step,
        },
    ))
}

/// Run with constant weights. `None` means uniform weights on each side.
pub fn run_scep(
    inst: &ScepInstance,
    x0: &Vector,
    sched: &ParamSchedule,
    theta: Option<&[f64]>,
    tau: Option<&[f64]>,
    stop: &StopRule,
    opts: &RunOptions,
) -> Result<IterateTrace> {
    let uniform = |count: usize| vec![1.0 / count as f64; count];
    let theta = theta.map_or_else(|| uniform(inst.components_q.len()), <[f64]>::to_vec);
    let tau = tau.map_or_else(|| uniform(inst.components_c.len()), <[f64]>::to_vec);
    run_loop(
        &inst.c,
        inst.known_solution.as_ref(),
        None,
        x0,
        stop,
        opts,
        |x, n| scep_step(inst, x, n, sched, &theta, &tau),
    )
}
