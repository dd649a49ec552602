//! Parallel projection method for a sum-decomposed split equilibrium
//! problem (`f = Σ f_i`, `F = Σ F_j`).
//!
//! The structure of one iteration matches the single-bifunction projection
//! method, with two differences: both step sizes are shared across
//! components through `max{ρ_n, ‖w¹‖, …, ‖w^M‖}` (and likewise for the
//! domain side), and the component results are averaged uniformly. With one
//! component per side every operation degenerates bitwise to the
//! single-bifunction method.

use crate::error::Result;
use crate::linalg::Vector;
use crate::problem::ScepInstance;
use crate::schedule::ParamSchedule;
use crate::steps::{
    backward_correction, check_membership, ensure_finite, project_image,
    projected_subgradient_step, run_loop,
};
use crate::trace::{IterateTrace, RunOptions, StepRecord, StopRule};

fn uniform_average(points: &[Vector]) -> Vector {
    let mut acc = points[0].clone();
    for p in &points[1..] {
        acc = acc.add(p);
    }
    acc.scale(1.0 / points.len() as f64)
}

pub fn ppsm_step(
    inst: &ScepInstance,
    x: &Vector,
    n: usize,
    sched: &ParamSchedule,
) -> Result<(Vector, StepRecord)> {
    let p = sched.validate_at(n)?;
    check_membership(&inst.c, x, n.max(1))?;

    let (ax, u) = project_image(&inst.q, &inst.a, x, n)?;
    let mut ws = Vec::with_capacity(inst.components_q.len());
    for f in &inst.components_q {
        let w = f.diagonal_subgradient(&u, p.eps)?;
        ensure_finite("w ∈ ∂F_j(u,·)(u)", n, &w)?;
        ws.push(w);
    }
    let gamma = p.beta / ws.iter().fold(p.rho, |acc, w| acc.max(w.norm()));
    let mut ys = Vec::with_capacity(ws.len());
    for w in &ws {
        ys.push(projected_subgradient_step(
            &inst.q,
            &u,
            gamma,
            w,
            "y_j = P_Q(u - gamma w_j)",
            n,
        )?);
    }
    let y = uniform_average(&ys);

    let z = backward_correction(&inst.c, &inst.a, x, &ax, &y, p.mu, n)?;

    let mut gs = Vec::with_capacity(inst.components_c.len());
    for f in &inst.components_c {
        let g = f.diagonal_subgradient(&z, p.eps)?;
        ensure_finite("g ∈ ∂f_i(z,·)(z)", n, &g)?;
        gs.push(g);
    }
    let alpha = p.beta / gs.iter().fold(p.rho, |acc, g| acc.max(g.norm()));
    let mut xs = Vec::with_capacity(gs.len());
    for g in &gs {
        xs.push(projected_subgradient_step(
            &inst.c,
            &z,
            alpha,
            g,
            "x_i = P_C(z - alpha g_i)",
            n,
        )?);
    }
    let x_next = uniform_average(&xs);

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
            gamma,
            alpha,
            mu: p.mu,
            delta: p.delta(),
            residual_split,
            residual_step,
        },
    ))
}

pub fn run_ppsm(
    inst: &ScepInstance,
    x0: &Vector,
    sched: &ParamSchedule,
    stop: &StopRule,
    opts: &RunOptions,
) -> Result<IterateTrace> {
    run_loop(
        &inst.c,
        inst.known_solution.as_ref(),
        None,
        x0,
        stop,
        opts,
        |x, n| ppsm_step(inst, x, n, sched),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate_scep_instance, generate_sep_instance, InstanceSpec, Variant};
    use crate::pm::pm_step;
    use crate::trace::FEJER_TOL;

    #[test]
    fn single_component_is_bitwise_the_plain_method() {
        let sep = generate_sep_instance(&InstanceSpec::new(4, 3, 77, Variant::General)).unwrap();
        let scep = ScepInstance::from_sep(&sep);
        let sched =
            ParamSchedule::inverse_power_preset(0.7, sep.certified_norm().unwrap()).unwrap();
        let mut x_pm = Vector::ones(4);
        let mut x_par = Vector::ones(4);
        for n in 0..25 {
            let (next_pm, rec_pm) = pm_step(&sep, &x_pm, n, &sched).unwrap();
            let (next_par, rec_par) = ppsm_step(&scep, &x_par, n, &sched).unwrap();
            assert_eq!(next_pm, next_par, "iterate diverged at n = {n}");
            assert_eq!(rec_pm.gamma, rec_par.gamma);
            assert_eq!(rec_pm.alpha, rec_par.alpha);
            assert_eq!(rec_pm.residual_split, rec_par.residual_split);
            assert_eq!(rec_pm.residual_step, rec_par.residual_step);
            x_pm = next_pm;
            x_par = next_par;
        }
    }

    #[test]
    fn duplicated_component_equals_single_component() {
        let sep = generate_sep_instance(&InstanceSpec::new(3, 2, 13, Variant::General)).unwrap();
        let single = ScepInstance::from_sep(&sep);
        let mut doubled = single.clone();
        doubled.components_c.push(doubled.components_c[0].clone());
        doubled.components_q.push(doubled.components_q[0].clone());
        let sched =
            ParamSchedule::inverse_power_preset(0.7, sep.certified_norm().unwrap()).unwrap();
        let mut x_a = Vector::ones(3);
        let mut x_b = Vector::ones(3);
        for n in 0..25 {
            let (na, _) = ppsm_step(&single, &x_a, n, &sched).unwrap();
            let (nb, _) = ppsm_step(&doubled, &x_b, n, &sched).unwrap();
            assert_eq!(
                na, nb,
                "averaging identical summands changed the step at n = {n}"
            );
            x_a = na;
            x_b = nb;
        }
    }

    #[test]
    fn two_component_instance_converges_without_violations() {
        let inst = generate_scep_instance(&InstanceSpec::new(
            4,
            3,
            50,
            Variant::Scep {
                components_c: 2,
                components_q: 2,
            },
        ))
        .unwrap();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let trace = run_ppsm(
            &inst,
            &Vector::ones(4),
            &sched,
            &StopRule::max_iter(400),
            &RunOptions::default(),
        )
        .unwrap();
        assert!(trace.final_d.unwrap() < 1e-2, "{:?}", trace.final_d);
        assert_eq!(trace.violation_count(FEJER_TOL), 0);
    }
}
