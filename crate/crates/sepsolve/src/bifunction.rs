//! Bifunction oracles: evaluation and diagonal subgradients.
//!
//! A bifunction `f(x, y)` with `f(x, x) = 0` drives each equilibrium problem.
//! The iterations only need `f` through two calls: evaluation, and one
//! element of the ε-diagonal subdifferential `∂_ε f(x, ·)(x)` (the
//! ε-subdifferential of the partial function `y ↦ f(x, y)` at `y = x`). All
//! oracles here return the exact gradient regardless of ε — the exact
//! gradient belongs to every ε-subdifferential, so nothing is lost.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::sets::Set;
use serde::{Deserialize, Serialize};

/// On-set tolerance for the indicator oracle.
const INDICATOR_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bifunction {
    /// `f(x, y) = ⟨P x + R y + c, y - x⟩` with `P` the x-coefficient and `R`
    /// the y-coefficient. Convex in `y` whenever `R + Rᵀ` is PSD.
    Quadratic {
        x_coeff: Matrix,
        y_coeff: Matrix,
        offset: Vector,
    },
    /// `f(x, y) = x₁ y₂ - x₂ y₁` on ℝ². Antisymmetric, so every point of the
    /// plane is "flat" against the solution — the witness that plain
    /// pseudomonotonicity is not enough for convergence.
    Rotation,
    /// `f(x, y) = δ_S(y) - δ_S(x)`; zero on the set, undefined off it.
    Indicator { set: Set },
}

impl Bifunction {
    pub fn quadratic(x_coeff: Matrix, y_coeff: Matrix, offset: Vector) -> Result<Self> {
        let dim = offset.dim();
        for (name, m) in [("x_coeff", &x_coeff), ("y_coeff", &y_coeff)] {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: if name == "x_coeff" {
                        "Bifunction::quadratic x_coeff"
                    } else {
                        "Bifunction::quadratic y_coeff"
                    },
                    expected: dim,
                    got: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Bifunction::Quadratic {
            x_coeff,
            y_coeff,
            offset,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Bifunction::Quadratic { offset, .. } => offset.dim(),
            Bifunction::Rotation => 2,
            Bifunction::Indicator { set } => set.dim(),
        }
    }

    fn check_dim(&self, v: &Vector, context: &'static str) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// `f(x, y)`.
    pub fn eval(&self, x: &Vector, y: &Vector) -> Result<f64> {
        self.check_dim(x, "Bifunction::eval x")?;
        self.check_dim(y, "Bifunction::eval y")?;
        match self {
            Bifunction::Quadratic {
                x_coeff,
                y_coeff,
                offset,
            } => {
                let inner = x_coeff.apply(x).add(&y_coeff.apply(y)).add(offset);
                Ok(inner.dot(&y.sub(x)))
            }
            Bifunction::Rotation => Ok(x[0] * y[1] - x[1] * y[0]),
            Bifunction::Indicator { set } => {
                if !set.contains(x, INDICATOR_TOL) {
                    return Err(Error::OffSet { which: "first" });
                }
                if !set.contains(y, INDICATOR_TOL) {
                    return Err(Error::OffSet { which: "second" });
                }
                Ok(0.0)
            }
        }
    }

    /// One element of `∂_ε f(x, ·)(x)`.
    ///
    /// Quadratic: the exact gradient `(P + R) x + c`. Rotation:
    /// `(-x₂, x₁)`. Indicator: the zero vector at on-set points (zero is
    /// always a subgradient of an indicator at a feasible point), an error
    /// off-set.
    pub fn diagonal_subgradient(&self, x: &Vector, eps: f64) -> Result<Vector> {
        debug_assert!(eps >= 0.0);
        let _ = eps; // exact gradients are valid for every ε ≥ 0
        self.check_dim(x, "Bifunction::diagonal_subgradient")?;
        match self {
            Bifunction::Quadratic {
                x_coeff,
                y_coeff,
                offset,
            } => Ok(x_coeff.apply(x).add(&y_coeff.apply(x)).add(offset)),
            Bifunction::Rotation => Ok(Vector(vec![-x[1], x[0]])),
            Bifunction::Indicator { set } => {
                if !set.contains(x, INDICATOR_TOL) {
                    return Err(Error::OffSet { which: "first" });
                }
                Ok(Vector::zeros(self.dim()))
            }
        }
    }
}
