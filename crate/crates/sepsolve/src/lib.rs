//! Projection-based iterative solvers for split equilibrium problems.
//!
//! A split equilibrium problem asks for a point of a set `C` at which a
//! bifunction `f` is nonnegative against every direction in `C`, while its
//! image under a linear operator `A` solves a second equilibrium problem on a
//! set `Q`. This crate provides:
//!
//! - a projection-only iteration (`pm`) that needs nothing beyond metric
//!   projections and diagonal subgradients,
//! - a projected subgradient + proximal baseline (`pspm`) for comparison,
//! - parallel variants for sum-decomposed (`ppsm`) and common (`scep`)
//!   equilibrium problems,
//! - reproducible random benchmark instances, two divergence
//!   counterexamples with closed-form certificates, invariant-checked
//!   convergence traces, and a CSV/JSON benchmark harness.
//!
//! Start with the `examples/` directory; each example exercises one
//! capability end to end. The `sepbench` binary wraps the same machinery in
//! `generate`, `run`, `compare`, `counterexample`, and `selfcheck`
//! subcommands.

// Validation and certificate checks use the `!(a OP b)` form on purpose:
// unlike the inverted operator, it rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifunction;
pub mod cli;
pub mod counterexample;
pub mod error;
pub mod generator;
pub mod io;
pub mod linalg;
pub mod pm;
pub mod ppsm;
pub mod problem;
pub mod qp;
pub mod report;
pub mod rng;
pub mod scep;
pub mod schedule;
pub mod sets;
pub mod trace;

pub mod pspm;
pub(crate) mod steps;

pub use bifunction::Bifunction;
pub use counterexample::{
    run_empty_solution_counterexample, run_rotation_counterexample, CounterexampleReport, Verdict,
};
pub use error::{Error, Result};
pub use generator::{
    generate_scep_instance, generate_sep_instance, generate_spectral_pair,
    make_empty_solution_instance, make_rotation_instance, InstanceSpec, Variant,
};
pub use linalg::{
    certified_operator_norm, operator_norm, random_orthogonal, symmetric_eigen_bounds,
    symmetric_eigenvalues, uniform_matrix, Matrix, Vector,
};
pub use pm::{pm_step, run_pm};
pub use ppsm::{ppsm_step, run_ppsm};
pub use problem::{ScepInstance, SepInstance};
pub use pspm::{pspm_step, run_pspm};
pub use qp::{prox_optimality_residual, solve_box_qp, solve_box_qp_with_cap, solve_resolvent};
pub use rng::Rng;
pub use scep::{run_scep, scep_step};
pub use schedule::{ParamSchedule, Seq, StepParams};
pub use sets::{BoxSet, Set};
pub use trace::{IterateTrace, RunOptions, StepRecord, StopRule, TraceRow};
