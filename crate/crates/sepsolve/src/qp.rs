//! Box-constrained quadratic programming and the proximal/resolvent solve
//! built on it.
//!
//! The solver minimizes `⟨M v, v⟩ + ⟨linear, v⟩` over a box by accelerated
//! projected gradient with the fixed step `1/L`, `L = ‖M + Mᵀ‖₂ + 1`, and
//! certifies its answer through the projected-gradient fixed-point residual
//! `‖v - P_B(v - (1/L) ∇obj(v))‖`.

use crate::bifunction::Bifunction;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen_bounds, Matrix, Vector};
use crate::rng::Rng;
use crate::sets::BoxSet;

const QP_MAX_ITER: usize = 200_000;
const CONVEXITY_TOL: f64 = 1e-8;

/// Minimize `⟨M v, v⟩ + ⟨linear, v⟩` over the box `B`.
///
/// `M` need not be symmetric; only `M + Mᵀ` matters. Errors when the
/// objective is not convex (within `1e-8` on the smallest symmetric
/// eigenvalue) or when the iteration cap is reached before the fixed-point
/// residual drops below `tol`.
pub fn solve_box_qp(m: &Matrix, linear: &Vector, b: &BoxSet, tol: f64) -> Result<Vector> {
    solve_box_qp_with_cap(m, linear, b, tol, QP_MAX_ITER)
}

/// [`solve_box_qp`] with an explicit iteration cap.
pub fn solve_box_qp_with_cap(
    m: &Matrix,
    linear: &Vector,
    b: &BoxSet,
    tol: f64,
    max_iter: usize,
) -> Result<Vector> {
    let dim = b.dim();
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            context: "solve_box_qp matrix",
            expected: dim,
            got: m.rows().max(m.cols()),
        });
    }
    if linear.dim() != dim {
        return Err(Error::DimensionMismatch {
            context: "solve_box_qp linear term",
            expected: dim,
            got: linear.dim(),
        });
    }
    assert!(tol > 0.0, "solve_box_qp needs a positive tolerance");

    let s = m.add(&m.transpose());
    let (eig_min, eig_max) = symmetric_eigen_bounds(&s);
    if eig_min < -CONVEXITY_TOL {
        return Err(Error::NonconvexObjective {
            min_eigenvalue: eig_min,
        });
    }
    let lipschitz = eig_min.abs().max(eig_max.abs()) + 1.0;
    let step = 1.0 / lipschitz;
    let grad = |v: &Vector| s.apply(v).add(linear);

    // Start from the box center; deterministic and always feasible.
    let mut x = Vector(
        b.lo()
            .iter()
            .zip(b.hi().iter())
            .map(|(&lo, &hi)| 0.5 * (lo + hi))
            .collect(),
    );
    let mut y = x.clone();
    let mut t = 1.0_f64;
    let mut residual = f64::INFINITY;

    for _ in 0..max_iter {
        let gx = grad(&x);
        let fixed_point = b.project(&x.axpy(-step, &gx));
        residual = fixed_point.sub(&x).norm();
        if residual <= tol {
            return Ok(x);
        }

        let gy = grad(&y);
        let x_next = b.project(&y.axpy(-step, &gy));
        // Gradient-based adaptive restart keeps the momentum from
        // overshooting on strongly curved instances.
        let momentum_ok = y.sub(&x_next).dot(&x_next.sub(&x)) <= 0.0;
        if momentum_ok {
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            let coeff = (t - 1.0) / t_next;
            y = x_next.add(&x_next.sub(&x).scale(coeff));
            t = t_next;
        } else {
            y = x_next.clone();
            t = 1.0;
        }
        x = x_next;
    }
    Err(Error::QpIterationCap { residual, tol })
}

/// Tolerance used for the internal QP solve behind the resolvent.
pub const RESOLVENT_QP_TOL: f64 = 1e-10;

/// Proximal evaluation of the quadratic `g(v) = ⟨M v, v⟩` over a box:
/// `argmin { g(v) + (1/r) ‖v - u‖² : v ∈ Q }`.
///
/// This is the resolvent of the bifunction
/// `F(x, y) = ⟨M x + M y, y - x⟩` (equal coefficient matrices); the
/// first-order condition gives the closed form `(I + r M)⁻¹ u` on the
/// unconstrained interior. The bifunction must be quadratic with equal
/// coefficients, which is what a resolvent-friendly generated instance
/// provides.
pub fn solve_resolvent(f: &Bifunction, r: f64, u: &Vector, q: &BoxSet, tol: f64) -> Result<Vector> {
    assert!(r > 0.0, "resolvent parameter must be positive");
    let m = equal_coefficient_matrix(f)?;
    if u.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            context: "solve_resolvent point",
            expected: q.dim(),
            got: u.dim(),
        });
    }
    // ⟨M v, v⟩ + (1/r)‖v - u‖² = ⟨(M + I/r) v, v⟩ - (2/r)⟨u, v⟩ + const
    let shifted = m.add(&Matrix::identity(q.dim()).scale(1.0 / r));
    let linear = u.scale(-2.0 / r);
    solve_box_qp(&shifted, &linear, q, tol)
}

/// The coefficient matrix of a quadratic bifunction with equal x/y
/// coefficients, or an error when the reduction does not apply.
fn equal_coefficient_matrix(f: &Bifunction) -> Result<Matrix> {
    match f {
        Bifunction::Quadratic {
            x_coeff, y_coeff, ..
        } => {
            let scale = x_coeff.max_abs().max(y_coeff.max_abs()).max(1.0);
            if x_coeff.sub(y_coeff).max_abs() > 1e-12 * scale {
                return Err(Error::ResolventUnavailable);
            }
            Ok(x_coeff.clone())
        }
        _ => Err(Error::ResolventUnavailable),
    }
}

/// Smallest value of `F(z, y) + (2/r) ⟨y - z, z - u⟩` over sampled `y ∈ Q`.
///
/// For `z = argmin { g(v) + (1/r)‖v - u‖² : v ∈ Q }` this quantity is
/// nonnegative for every `y ∈ Q` (first-order optimality plus convexity of
/// `g`), so a solved resolvent keeps the sampled minimum above `-tol`.
pub fn prox_optimality_residual(
    f: &Bifunction,
    r: f64,
    u: &Vector,
    z: &Vector,
    q: &BoxSet,
    samples: usize,
    rng: &mut Rng,
) -> Result<f64> {
    let dim = q.dim();
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let y = Vector(
            (0..dim)
                .map(|i| rng.uniform(q.lo()[i], q.hi()[i]))
                .collect(),
        );
        let lhs = f.eval(z, &y)? + (2.0 / r) * y.sub(z).dot(&z.sub(u));
        worst = worst.min(lhs);
    }
    Ok(worst)
}
