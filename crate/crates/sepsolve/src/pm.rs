//! The projection-only method for split equilibrium problems.
//!
//! One iteration from `x_n ∈ C`:
//!
//! 1. `u_n = P_Q(A x_n)`, pick `w_n ∈ ∂_ε F(u_n, ·)(u_n)`, step
//!    `γ_n = β_n / max{ρ_n, ‖w_n‖}`, and set `y_n = P_Q(u_n - γ_n w_n)`;
//! 2. `z_n = P_C(x_n + μ_n Aᵀ(y_n - A x_n))`;
//! 3. pick `g_n ∈ ∂_ε f(z_n, ·)(z_n)`, step
//!    `α_n = β_n / max{ρ_n, ‖g_n‖}`, and set `x_{n+1} = P_C(z_n - α_n g_n)`.
//!
//! Nothing beyond metric projections and diagonal subgradients is ever
//! evaluated — no resolvent, no inner optimization.

use crate::error::Result;
use crate::linalg::Vector;
use crate::problem::SepInstance;
use crate::schedule::ParamSchedule;
use crate::steps::{
    backward_correction, check_membership, ensure_finite, project_image,
    projected_subgradient_step, run_loop,
};
use crate::trace::{IterateTrace, RunOptions, StepRecord, StopRule};

/// One iteration. Validates the schedule at `n` and the feasibility of
/// `x_n`; any non-finite intermediate is reported with the stage that
/// produced it.
pub fn pm_step(
    inst: &SepInstance,
    x: &Vector,
    n: usize,
    sched: &ParamSchedule,
) -> Result<(Vector, StepRecord)> {
    let p = sched.validate_at(n)?;
    check_membership(&inst.c, x, n.max(1))?;

    let (ax, u) = project_image(&inst.q, &inst.a, x, n)?;
    let w = inst.f_q.diagonal_subgradient(&u, p.eps)?;
    ensure_finite("w ∈ ∂F(u,·)(u)", n, &w)?;
    let gamma = p.beta / p.rho.max(w.norm());
    let y = projected_subgradient_step(&inst.q, &u, gamma, &w, "y = P_Q(u - gamma w)", n)?;

    let z = backward_correction(&inst.c, &inst.a, x, &ax, &y, p.mu, n)?;

    let g = inst.f_c.diagonal_subgradient(&z, p.eps)?;
    ensure_finite("g ∈ ∂f(z,·)(z)", n, &g)?;
    let alpha = p.beta / p.rho.max(g.norm());
    let x_next = projected_subgradient_step(&inst.c, &z, alpha, &g, "x' = P_C(z - alpha g)", n)?;

    let residual_split = u.sub(&ax).norm();
    let residual_step = x_next.sub(&z).norm();
    Ok((
        x_next,
        StepRecord {
            u,
            y,
            z,
            subgradients_q: vec![w],
            subgradients_c: vec![g],
            gamma,
            alpha,
            mu: p.mu,
            delta: p.delta(),
            residual_split,
            residual_step,
        },
    ))
}

/// Run the method from `x0 ∈ C` until the stop rule fires, returning the
/// full invariant-checked trace.
pub fn run_pm(
    inst: &SepInstance,
    x0: &Vector,
    sched: &ParamSchedule,
    stop: &StopRule,
    opts: &RunOptions,
) -> Result<IterateTrace> {
    run_loop(
        &inst.c,
        inst.known_solution.as_ref(),
        Some(&inst.f_c),
        x0,
        stop,
        opts,
        |x, n| pm_step(inst, x, n, sched),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate_sep_instance, make_rotation_instance, InstanceSpec, Variant};
    use crate::schedule::ParamSchedule;
    use crate::trace::FEJER_TOL;

    fn small_instance() -> SepInstance {
        generate_sep_instance(&InstanceSpec::new(2, 2, 404, Variant::General)).unwrap()
    }

    #[test]
    fn solution_is_a_fixed_point() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let zero = Vector::zeros(2);
        let (x_next, rec) = pm_step(&inst, &zero, 0, &sched).unwrap();
        assert_eq!(x_next, zero);
        assert_eq!(rec.u, Vector::zeros(2));
        assert_eq!(rec.y, Vector::zeros(2));
        assert_eq!(rec.z, Vector::zeros(2));
        assert_eq!(rec.subgradients_q[0], Vector::zeros(2));
        assert_eq!(rec.subgradients_c[0], Vector::zeros(2));
        assert_eq!(rec.residual_split, 0.0);
        assert_eq!(rec.residual_step, 0.0);
    }

    #[test]
    fn run_from_solution_stays_at_zero_distance() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let trace = run_pm(
            &inst,
            &Vector::zeros(2),
            &sched,
            &StopRule::max_iter(20),
            &RunOptions::default(),
        )
        .unwrap();
        assert!(trace.rows.iter().all(|r| r.d == Some(0.0)));
        assert_eq!(trace.final_d, Some(0.0));
    }

    #[test]
    fn rotation_intermediates_match_closed_form() {
        // With beta = 0.5, rho = 1 and ‖x‖ = 1 the Q-side step is
        // gamma = 0.5; with mu = 0.5 the closed forms are
        // y = (x1 + γ x2, x2 - γ x1), z = (x1 + µγ x2, x2 - µγ x1).
        let inst = make_rotation_instance();
        let sched = ParamSchedule::custom(
            crate::schedule::Seq::Const(1.0),
            crate::schedule::Seq::Const(0.5),
            crate::schedule::Seq::Const(0.0),
            crate::schedule::Seq::Const(0.5),
            1.0,
            (0.5, 0.5),
            "fixed gamma test",
        )
        .unwrap();
        let x = Vector(vec![1.0, 0.0]);
        let (_, rec) = pm_step(&inst, &x, 0, &sched).unwrap();
        assert_eq!(rec.gamma, 0.5);
        assert!((rec.y[0] - 1.0).abs() < 1e-15 && (rec.y[1] + 0.5).abs() < 1e-15);
        assert!((rec.z[0] - 1.0).abs() < 1e-15 && (rec.z[1] + 0.25).abs() < 1e-15);
    }

    #[test]
    fn convergence_on_a_small_instance() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let x0 = Vector::ones(2);
        let trace = run_pm(
            &inst,
            &x0,
            &sched,
            &StopRule::max_iter(400),
            &RunOptions::default(),
        )
        .unwrap();
        let d0 = trace.initial_d().unwrap();
        assert!(
            trace.final_d.unwrap() < 1e-3 * d0,
            "final D = {:?}",
            trace.final_d
        );
        assert_eq!(trace.violation_count(FEJER_TOL), 0);
    }

    #[test]
    fn step_sizes_respect_the_floor() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.51, inst.certified_norm().unwrap()).unwrap();
        let trace = run_pm(
            &inst,
            &Vector::ones(2),
            &sched,
            &StopRule::max_iter(100),
            &RunOptions::default(),
        )
        .unwrap();
        for row in &trace.rows {
            let beta = sched.validate_at(row.n).unwrap().beta;
            let cap = beta / sched.rho_min();
            assert!(row.gamma > 0.0 && row.gamma <= cap);
            assert!(row.alpha > 0.0 && row.alpha <= cap);
        }
    }

    #[test]
    fn distance_stop_rule_terminates_early() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let stop = StopRule::max_iter(400).with_d_tol(1e-4);
        let trace = run_pm(
            &inst,
            &Vector::ones(2),
            &sched,
            &stop,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(trace.iterations() < 400);
        assert!(trace.final_d.unwrap() <= 1e-4);
    }

    #[test]
    fn residual_stop_rule_terminates_early() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let stop = StopRule::max_iter(400).with_residual_tol(1e-6);
        let trace = run_pm(
            &inst,
            &Vector::ones(2),
            &sched,
            &stop,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(trace.iterations() < 400);
        let last = trace.rows.last().unwrap();
        assert!(last.residual_split.max(last.residual_step) <= 1e-6);
    }

    #[test]
    fn infeasible_start_is_refused() {
        let inst = small_instance();
        let sched =
            ParamSchedule::inverse_power_preset(0.7, inst.certified_norm().unwrap()).unwrap();
        let err = run_pm(
            &inst,
            &Vector(vec![100.0, 100.0]),
            &sched,
            &StopRule::max_iter(5),
            &RunOptions::default(),
        );
        assert!(matches!(
            err,
            Err(crate::error::Error::StartNotFeasible { .. })
        ));
    }

    #[test]
    fn overflowing_subgradient_names_the_stage() {
        use crate::bifunction::Bifunction;
        use crate::linalg::Matrix;
        use crate::sets::Set;
        // (P + R) x overflows to infinity, so the F-side subgradient stage
        // must be the one reported.
        let huge = Matrix::from_rows(&[vec![1e308, 1e308], vec![1e308, 1e308]]).unwrap();
        let f_q = Bifunction::quadratic(huge.clone(), huge, Vector::zeros(2)).unwrap();
        let inst = SepInstance::new(
            Set::WholeSpace { dim: 2 },
            Set::WholeSpace { dim: 2 },
            Matrix::identity(2),
            Bifunction::Rotation,
            f_q,
            None,
        )
        .unwrap();
        let sched = ParamSchedule::inverse_power_preset(0.7, 1.0 + 1e-6).unwrap();
        let err = pm_step(&inst, &Vector::ones(2), 0, &sched);
        match err {
            Err(crate::error::Error::NonFinite { stage, iteration }) => {
                assert!(stage.contains('w'), "stage was {stage}");
                assert_eq!(iteration, 0);
            }
            other => panic!("expected a stage-named non-finite error, got {other:?}"),
        }
    }
}
