//! Parameter schedules for the iterative methods.
//!
//! Each run consumes four scalar sequences: the subgradient floor `ρ_n`, the
//! step numerator `β_n`, the subgradient slack `ε_n`, and the split step
//! `μ_n`. Validity falls in two halves:
//!
//! - pointwise conditions (`ρ_n ≥ ρ_min > 0`, `β_n > 0`, `ε_n ≥ 0`,
//!   `0 < a ≤ μ_n ≤ μ_max` with `μ_max` derived from a certified operator
//!   norm) are checked on every emitted index;
//! - series conditions (`Σ β_n/ρ_n = ∞`, `Σ β_n ε_n/ρ_n < ∞`, `Σ β_n² < ∞`)
//!   cannot be machine-checked for arbitrary closures. The stock preset
//!   `β_n = 1/(n+1)^s` with constant `ρ` and `ε ≡ 0` carries an analytic
//!   certificate for `s ∈ (1/2, 1]` and is marked `certified`; anything else
//!   is marked uncertified and only gets partial-sum sanity warnings.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A scalar sequence `n ↦ value`.
#[derive(Clone)]
pub enum Seq {
    Const(f64),
    /// `1 / (n + 1)^exponent`
    InvPow {
        exponent: f64,
    },
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl Seq {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            Seq::Const(v) => *v,
            Seq::InvPow { exponent } => ((n + 1) as f64).powf(-exponent),
            Seq::Custom(f) => f(n),
        }
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seq::Const(v) => write!(f, "Const({v})"),
            Seq::InvPow { exponent } => write!(f, "InvPow(s={exponent})"),
            Seq::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// The validated parameters emitted for one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepParams {
    pub rho: f64,
    pub beta: f64,
    pub eps: f64,
    pub mu: f64,
}

impl StepParams {
    /// The per-iteration perturbation `δ_n = 2 β_n ε_n / ρ_n + 2 β_n²` that
    /// bounds how far one iteration may move away from a solution.
    pub fn delta(&self) -> f64 {
        2.0 * self.beta * self.eps / self.rho + 2.0 * self.beta * self.beta
    }
}

#[derive(Clone, Debug)]
pub struct ParamSchedule {
    rho: Seq,
    beta: Seq,
    eps: Seq,
    mu: Seq,
    rho_min: f64,
    mu_lower: f64,
    mu_upper: f64,
    descriptor: String,
    certified: bool,
}

impl ParamSchedule {
    /// The stock preset: `ρ ≡ 1`, `ε ≡ 0`, `β_n = 1/(n+1)^s`, and a constant
    /// `μ = 1/‖A‖²` computed from the certified (inflated) operator norm so
    /// the split-step bound holds with certainty. Certified when
    /// `s ∈ (1/2, 1]`.
    pub fn inverse_power_preset(s: f64, certified_norm: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Validation {
                field: "beta_exponent".into(),
                detail: format!("must be a positive finite number, got {s}"),
            });
        }
        if !(certified_norm > 0.0 && certified_norm.is_finite()) {
            return Err(Error::Validation {
                field: "certified_norm".into(),
                detail: format!("must be a positive finite number, got {certified_norm}"),
            });
        }
        let mu = 1.0 / (certified_norm * certified_norm);
        Ok(ParamSchedule {
            rho: Seq::Const(1.0),
            beta: Seq::InvPow { exponent: s },
            eps: Seq::Const(0.0),
            mu: Seq::Const(mu),
            rho_min: 1.0,
            mu_lower: mu,
            mu_upper: mu,
            descriptor: format!("rho=1, eps=0, beta=(n+1)^-{s}, mu=1/||A||^2={mu:.6e}"),
            certified: s > 0.5 && s <= 1.0,
        })
    }

    /// Same preset with the split step replaced by a constant `mu`. The
    /// certification flag is unchanged: it concerns the series conditions on
    /// `β`, `ρ`, `ε`, while `mu` stays subject to the pointwise bound check.
    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Validation {
                field: "mu".into(),
                detail: format!("must be a positive finite number, got {mu}"),
            });
        }
        self.mu = Seq::Const(mu);
        self.mu_lower = mu;
        self.mu_upper = mu;
        self.descriptor = format!("{} (mu overridden to {mu})", self.descriptor);
        Ok(self)
    }

    /// Fully custom schedule; always uncertified.
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        rho: Seq,
        beta: Seq,
        eps: Seq,
        mu: Seq,
        rho_min: f64,
        mu_bounds: (f64, f64),
        descriptor: impl Into<String>,
    ) -> Result<Self> {
        if !(rho_min > 0.0) {
            return Err(Error::Validation {
                field: "rho_min".into(),
                detail: "must be strictly positive".into(),
            });
        }
        if !(mu_bounds.0 > 0.0 && mu_bounds.0 <= mu_bounds.1) {
            return Err(Error::Validation {
                field: "mu_bounds".into(),
                detail: format!("need 0 < a <= b, got ({}, {})", mu_bounds.0, mu_bounds.1),
            });
        }
        Ok(ParamSchedule {
            rho,
            beta,
            eps,
            mu,
            rho_min,
            mu_lower: mu_bounds.0,
            mu_upper: mu_bounds.1,
            descriptor: descriptor.into(),
            certified: false,
        })
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn descriptor(&self) -> &str {
        self.descriptor.as_str()
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn mu_bounds(&self) -> (f64, f64) {
        (self.mu_lower, self.mu_upper)
    }

    /// Emit and validate the parameters for iteration `n`.
    pub fn validate_at(&self, n: usize) -> Result<StepParams> {
        let p = StepParams {
            rho: self.rho.at(n),
            beta: self.beta.at(n),
            eps: self.eps.at(n),
            mu: self.mu.at(n),
        };
        let fail = |what: String| Err(Error::ScheduleInvalid { n, what });
        if !p.rho.is_finite() || p.rho < self.rho_min {
            return fail(format!("rho = {} below the floor {}", p.rho, self.rho_min));
        }
        if !p.beta.is_finite() || p.beta <= 0.0 {
            return fail(format!("beta = {} must be strictly positive", p.beta));
        }
        if !p.eps.is_finite() || p.eps < 0.0 {
            return fail(format!("eps = {} must be nonnegative", p.eps));
        }
        if !p.mu.is_finite() || p.mu < self.mu_lower || p.mu > self.mu_upper {
            return fail(format!(
                "mu = {} outside the admissible range [{}, {}]",
                p.mu, self.mu_lower, self.mu_upper
            ));
        }
        Ok(p)
    }

    /// Heuristic partial-sum warnings for uncertified schedules. Empty for
    /// certified ones. These are advisory: a finite horizon cannot prove or
    /// refute convergence of a series.
    pub fn partial_sum_warnings(&self, horizon: usize) -> Vec<String> {
        if self.certified {
            return Vec::new();
        }
        let horizon = horizon.max(64);
        let mut warnings = Vec::new();

        // Estimate the decay exponent of beta from two probes.
        let b_quarter = self.beta.at(horizon / 4);
        let b_end = self.beta.at(horizon - 1);
        if b_quarter > 0.0 && b_end > 0.0 {
            let ratio = b_quarter / b_end;
            let s_hat =
                ratio.ln() / (((horizon - 1).max(1)) as f64 / (horizon / 4 + 1) as f64).ln();
            if 2.0 * s_hat <= 1.0 + 1e-2 {
                warnings.push(format!(
                    "sum of beta_n^2 may diverge (estimated decay exponent {s_hat:.3})"
                ));
            }
            if s_hat > 1.0 + 1e-2 {
                warnings.push(format!(
                    "sum of beta_n/rho_n may converge instead of diverging \
                     (estimated decay exponent {s_hat:.3})"
                ));
            }
        }

        // The slack series must be summable; compare the two halves.
        let half: f64 = (0..horizon / 2)
            .map(|n| self.beta.at(n) * self.eps.at(n) / self.rho.at(n))
            .sum();
        let rest: f64 = (horizon / 2..horizon)
            .map(|n| self.beta.at(n) * self.eps.at(n) / self.rho.at(n))
            .sum();
        if rest > 0.9 * half && rest > 0.0 {
            warnings.push(
                "sum of beta_n*eps_n/rho_n is not visibly tailing off over the horizon".into(),
            );
        }
        warnings
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_values_and_certification() {
        let sched = ParamSchedule::inverse_power_preset(0.7, 2.0).unwrap();
        assert!(sched.certified());
        let p0 = sched.validate_at(0).unwrap();
        assert_eq!(p0.beta, 1.0);
        assert_eq!(p0.rho, 1.0);
        assert_eq!(p0.eps, 0.0);
        assert_eq!(p0.mu, 0.25);
        let p9 = sched.validate_at(9).unwrap();
        assert!((p9.beta - 10.0_f64.powf(-0.7)).abs() < 1e-15);
        assert_eq!(p9.delta(), 2.0 * p9.beta * p9.beta);
    }

    #[test]
    fn certification_boundary() {
        for (s, want) in [
            (0.51, true),
            (1.0, true),
            (0.5, false),
            (1.1, false),
            (0.3, false),
        ] {
            let sched = ParamSchedule::inverse_power_preset(s, 1.0).unwrap();
            assert_eq!(sched.certified(), want, "s = {s}");
        }
    }

    #[test]
    fn pointwise_violations_are_reported() {
        let sched = ParamSchedule::custom(
            Seq::Const(1.0),
            Seq::Custom(Arc::new(|n| if n == 3 { -1.0 } else { 1.0 })),
            Seq::Const(0.0),
            Seq::Const(0.1),
            1.0,
            (0.1, 0.1),
            "test",
        )
        .unwrap();
        assert!(sched.validate_at(0).is_ok());
        assert!(matches!(
            sched.validate_at(3),
            Err(Error::ScheduleInvalid { n: 3, .. })
        ));
    }

    #[test]
    fn mu_outside_bounds_is_rejected() {
        let sched = ParamSchedule::custom(
            Seq::Const(1.0),
            Seq::InvPow { exponent: 0.7 },
            Seq::Const(0.0),
            Seq::Custom(Arc::new(|n| if n > 0 { 0.5 } else { 0.1 })),
            1.0,
            (0.05, 0.2),
            "test",
        )
        .unwrap();
        assert!(sched.validate_at(0).is_ok());
        assert!(sched.validate_at(1).is_err());
    }

    #[test]
    fn warnings_only_for_uncertified() {
        let certified = ParamSchedule::inverse_power_preset(0.7, 1.0).unwrap();
        assert!(certified.partial_sum_warnings(10_000).is_empty());

        // beta constant: sum beta^2 diverges.
        let flat = ParamSchedule::custom(
            Seq::Const(1.0),
            Seq::Const(0.5),
            Seq::Const(0.0),
            Seq::Const(0.1),
            1.0,
            (0.1, 0.1),
            "flat beta",
        )
        .unwrap();
        let warnings = flat.partial_sum_warnings(10_000);
        assert!(
            warnings.iter().any(|w| w.contains("beta_n^2")),
            "{warnings:?}"
        );

        // beta = (n+1)^-2: square-summable but sum beta/rho converges too.
        let steep = ParamSchedule::custom(
            Seq::Const(1.0),
            Seq::InvPow { exponent: 2.0 },
            Seq::Const(0.0),
            Seq::Const(0.1),
            1.0,
            (0.1, 0.1),
            "steep beta",
        )
        .unwrap();
        let warnings = steep.partial_sum_warnings(10_000);
        assert!(
            warnings.iter().any(|w| w.contains("beta_n/rho_n")),
            "{warnings:?}"
        );
    }

    #[test]
    fn mu_override_keeps_certification() {
        let sched = ParamSchedule::inverse_power_preset(0.7, 1.0)
            .unwrap()
            .with_mu(0.5)
            .unwrap();
        assert!(sched.certified());
        assert_eq!(sched.validate_at(5).unwrap().mu, 0.5);
    }
}
