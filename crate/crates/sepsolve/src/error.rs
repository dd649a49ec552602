//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value detected at stage `{stage}` (iteration {iteration})")]
    NonFinite {
        stage: &'static str,
        iteration: usize,
    },

    #[error("operator norm estimate did not converge within {iters} iterations (last estimate {last_estimate})")]
    NormEstimateStalled { last_estimate: f64, iters: usize },

    #[error("cannot estimate the norm of a zero matrix")]
    ZeroMatrix,

    #[error("empty interval: lo = {lo} must be strictly below hi = {hi}")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("random orthogonal draw was rank deficient after {retries} retries")]
    RankDeficientDraw { retries: usize },

    #[error("box bound {index} inverted: lo = {lo} > hi = {hi}")]
    InvertedBound { index: usize, lo: f64, hi: f64 },

    #[error("projection unsupported for this input: {detail}")]
    UnsupportedProjection { detail: String },

    #[error("point lies outside the {which} set required by an indicator bifunction")]
    OffSet { which: &'static str },

    #[error("quadratic objective is not convex: min symmetric eigenvalue {min_eigenvalue:.3e}")]
    NonconvexObjective { min_eigenvalue: f64 },

    #[error("box QP hit the iteration cap with residual {residual:.3e} (tolerance {tol:.3e})")]
    QpIterationCap { residual: f64, tol: f64 },

    #[error("resolvent requires a quadratic bifunction with equal coefficient matrices")]
    ResolventUnavailable,

    #[error("schedule invalid at n = {n}: {what}")]
    ScheduleInvalid { n: usize, what: String },

    #[error("invalid averaging weights: {detail}")]
    WeightsInvalid { detail: String },

    #[error("starting point is not in the feasible set (distance {distance:.3e})")]
    StartNotFeasible { distance: f64 },

    #[error("iterate left the feasible set at iteration {iteration} (distance {distance:.3e})")]
    IterateNotFeasible { iteration: usize, distance: f64 },

    #[error("algorithm `{algo}` cannot run on this instance: {detail}")]
    AlgorithmMismatch { algo: &'static str, detail: String },

    #[error("compare requires all configs to reference the same instance: {detail}")]
    InstanceMismatch { detail: String },

    #[error("invalid field `{field}`: {detail}")]
    Validation { field: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
