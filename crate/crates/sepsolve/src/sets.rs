//! Feasible sets with metric projection oracles.
//!
//! The solvers only ever touch sets through [`Set::project`] and
//! [`Set::contains`]. Boxes cover the benchmark instances; the whole space
//! and the two special planar sets exist for the divergence counterexamples.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use serde::{Deserialize, Serialize};

/// Axis-aligned box `{ x : lo_i ≤ x_i ≤ hi_i }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxSet {
    lo: Vector,
    hi: Vector,
}

impl BoxSet {
    pub fn new(lo: Vector, hi: Vector) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch {
                context: "BoxSet::new",
                expected: lo.dim(),
                got: hi.dim(),
            });
        }
        for i in 0..lo.dim() {
            if !(lo[i] <= hi[i]) {
                return Err(Error::InvertedBound {
                    index: i,
                    lo: lo[i],
                    hi: hi[i],
                });
            }
        }
        Ok(BoxSet { lo, hi })
    }

    /// The cube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        BoxSet::new(Vector(vec![lo; dim]), Vector(vec![hi; dim]))
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &Vector {
        &self.lo
    }

    pub fn hi(&self) -> &Vector {
        &self.hi
    }

    /// Componentwise clamp `min(hi_i, max(lo_i, x_i))`.
    pub fn project(&self, x: &Vector) -> Vector {
        debug_assert_eq!(x.dim(), self.dim());
        Vector(
            x.iter()
                .zip(self.lo.iter())
                .zip(self.hi.iter())
                .map(|((&x, &lo), &hi)| hi.min(lo.max(x)))
                .collect(),
        )
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        x.iter()
            .zip(self.lo.iter())
            .zip(self.hi.iter())
            .all(|((&x, &lo), &hi)| x >= lo - tol && x <= hi + tol)
    }
}

/// Feasible set with an exact projection oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Set {
    Box(BoxSet),
    /// All of ℝ^dim; projection is the identity.
    WholeSpace {
        dim: usize,
    },
    /// The planar ray `{(x, 0) : x ≥ 1}`.
    AxisRay,
    /// The planar region `{(x, y) : x ≥ 1, y ≥ 1/√x}`. The projection
    /// oracle is special-purpose: it accepts points already in the set and
    /// points of the form `(x, 0)` with `x ≥ 1`, the only inputs the
    /// divergence construction produces.
    InvSqrtEpigraph,
}

impl Set {
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Ok(Set::Box(BoxSet::cube(dim, lo, hi)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            Set::Box(b) => b.dim(),
            Set::WholeSpace { dim } => *dim,
            Set::AxisRay | Set::InvSqrtEpigraph => 2,
        }
    }

    pub fn project(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "Set::project",
                expected: self.dim(),
                got: x.dim(),
            });
        }
        match self {
            Set::Box(b) => Ok(b.project(x)),
            Set::WholeSpace { .. } => Ok(x.clone()),
            Set::AxisRay => Ok(Vector(vec![x[0].max(1.0), 0.0])),
            Set::InvSqrtEpigraph => project_inv_sqrt_epigraph(x),
        }
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        match self {
            Set::Box(b) => b.contains(x, tol),
            Set::WholeSpace { .. } => true,
            Set::AxisRay => x[0] >= 1.0 - tol && x[1].abs() <= tol,
            Set::InvSqrtEpigraph => {
                x[0] >= 1.0 - tol && x[1] >= 1.0 / x[0].max(1e-300).sqrt() - tol
            }
        }
    }
}

const MEMBERSHIP_TOL: f64 = 1e-12;
const STATIONARITY_TOL: f64 = 1e-12;

/// Projection onto `{(x, y) : x ≥ 1, y ≥ 1/√x}` for the inputs the
/// divergence construction produces.
///
/// Points already in the set project to themselves. For `(x, 0)` with
/// `x ≥ 1` the projection lies on the boundary curve `y = 1/√t`, where `t*`
/// minimizes `h(t) = (t - x)² + 1/t` over `t ≥ 1`; `t*` is found by bisection
/// on `h'(t) = 2(t - x) - 1/t²`, which is strictly increasing and brackets a
/// root in `[x, x + 1]`. Any other input is rejected.
fn project_inv_sqrt_epigraph(p: &Vector) -> Result<Vector> {
    let (x, y) = (p[0], p[1]);
    if x >= 1.0 - MEMBERSHIP_TOL && y >= 1.0 / x.max(1.0).sqrt() - MEMBERSHIP_TOL {
        return Ok(p.clone());
    }
    if y.abs() <= MEMBERSHIP_TOL && x >= 1.0 - MEMBERSHIP_TOL {
        let t = boundary_minimizer(x.max(1.0))?;
        return Ok(Vector(vec![t, 1.0 / t.sqrt()]));
    }
    Err(Error::UnsupportedProjection {
        detail: format!(
            "projection onto the inverse-sqrt epigraph is only defined for on-set points \
             or points (x, 0) with x >= 1; got ({x}, {y})"
        ),
    })
}

/// Bisection for `argmin_{t ≥ 1} (t - x)² + 1/t` with `x ≥ 1`.
fn boundary_minimizer(x: f64) -> Result<f64> {
    let dh = |t: f64| 2.0 * (t - x) - 1.0 / (t * t);
    // h'(x) = -1/x² < 0 and h'(x+1) = 2 - 1/(x+1)² > 0.
    let (mut lo, mut hi) = (x, x + 1.0);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let d = dh(mid);
        if d.abs() <= STATIONARITY_TOL {
            return Ok(mid);
        }
        if d < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * mid {
            break;
        }
    }
    let d = dh(mid);
    if d.abs() <= 1e-9 {
        // Flat gradient at float resolution; the bracket collapsed.
        return Ok(mid);
    }
    Err(Error::UnsupportedProjection {
        detail: format!("boundary bisection stalled at t = {mid}, h'(t) = {d}"),
    })
}
