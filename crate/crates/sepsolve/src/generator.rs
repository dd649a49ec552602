//! Reproducible construction of benchmark instances.
//!
//! The random family follows a Nash–Cournot-style quadratic recipe: on each
//! side the bifunction is `⟨P x + R y + c, y - x⟩` where `R` is symmetric
//! PSD with eigenvalues drawn uniformly from `[1, 10]`, `R - P` is NSD with
//! eigenvalues drawn uniformly from `[-10, 0]` (both conjugated by
//! independent random orthogonal matrices), the offsets are zero, and the
//! operator `A` has i.i.d. uniform entries in `[-10, 10]`. With zero offsets
//! the origin solves both sides simultaneously, so `x* = 0` is recorded as
//! the known solution.
//!
//! Generation is a pure function of the instance spec. The draw order is fixed:
//! for each bifunction the negative eigenvalues, then the positive
//! eigenvalues, then the orthogonal matrix for the negative part, then the
//! one for the positive part (matrices of normals filled row-major); the
//! domain-side bifunction(s) come first, then the image-side one(s), then
//! `A` row-major.

use crate::bifunction::Bifunction;
use crate::error::{Error, Result};
use crate::linalg::{random_orthogonal, symmetric_eigen_bounds, uniform_matrix, Matrix, Vector};
use crate::problem::{ScepInstance, SepInstance};
use crate::rng::Rng;
use crate::sets::Set;
use serde::{Deserialize, Serialize};

pub const DEFAULT_BOX_C: (f64, f64) = (-1.0, 5.0);
pub const DEFAULT_BOX_Q: (f64, f64) = (-2.0, 5.0);
pub const DEFAULT_A_RANGE: (f64, f64) = (-10.0, 10.0);
const NEGATIVE_EIG_RANGE: (f64, f64) = (-10.0, 0.0);
const POSITIVE_EIG_RANGE: (f64, f64) = (1.0, 10.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Independent spectral pairs on both sides; the resolvent of the
    /// image-side bifunction has no easy form, so only projection-based
    /// methods run here.
    General,
    /// The image-side bifunction uses one PSD matrix for both coefficients,
    /// which reduces its resolvent to a proximal step of a quadratic —
    /// required by the proximal baseline.
    ResolventFriendly,
    /// Multiple components per side for the common-problem solvers.
    Scep {
        components_c: usize,
        components_q: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub variant: Variant,
    pub box_c: (f64, f64),
    pub box_q: (f64, f64),
    pub a_range: (f64, f64),
}

impl InstanceSpec {
    pub fn new(m: usize, k: usize, seed: u64, variant: Variant) -> Self {
        InstanceSpec {
            m,
            k,
            seed,
            variant,
            box_c: DEFAULT_BOX_C,
            box_q: DEFAULT_BOX_Q,
            a_range: DEFAULT_A_RANGE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Validation {
                field: "m".into(),
                detail: "domain dimension must be at least 1".into(),
            });
        }
        if self.k == 0 {
            return Err(Error::Validation {
                field: "k".into(),
                detail: "image dimension must be at least 1".into(),
            });
        }
        for (name, (lo, hi)) in [
            ("box_c", self.box_c),
            ("box_q", self.box_q),
            ("a_range", self.a_range),
        ] {
            if !(lo < hi) {
                return Err(Error::Validation {
                    field: name.into(),
                    detail: format!("need lo < hi, got ({lo}, {hi})"),
                });
            }
        }
        if let Variant::Scep {
            components_c,
            components_q,
        } = self.variant
        {
            if components_c == 0 || components_q == 0 {
                return Err(Error::Validation {
                    field: "variant".into(),
                    detail: "component counts must be at least 1".into(),
                });
            }
        }
        Ok(())
    }
}

/// Deterministic core of the spectral construction: given eigenvalues and
/// orthogonal matrices, build `R = Q₊ diag(λ₊) Q₊ᵀ` (PSD),
/// `T = Q₋ diag(λ₋) Q₋ᵀ` (NSD), and return `(P, R) = (R - T, R)`.
pub fn spectral_pair_from_parts(
    lambda_neg: &[f64],
    lambda_pos: &[f64],
    q_neg: &Matrix,
    q_pos: &Matrix,
) -> (Matrix, Matrix) {
    let conjugate = |q: &Matrix, lam: &[f64]| {
        q.matmul(&Matrix::diagonal(lam))
            .matmul(&q.transpose())
            .symmetrized()
    };
    let r = conjugate(q_pos, lambda_pos);
    let t = conjugate(q_neg, lambda_neg);
    (r.sub(&t), r)
}

/// Random spectral pair `(P, R)` with `R` symmetric PSD and `R - P` NSD.
pub fn generate_spectral_pair(dim: usize, rng: &mut Rng) -> Result<(Matrix, Matrix)> {
    let lambda_neg: Vec<f64> = (0..dim)
        .map(|_| rng.uniform(NEGATIVE_EIG_RANGE.0, NEGATIVE_EIG_RANGE.1))
        .collect();
    let lambda_pos: Vec<f64> = (0..dim)
        .map(|_| rng.uniform(POSITIVE_EIG_RANGE.0, POSITIVE_EIG_RANGE.1))
        .collect();
    let q_neg = random_orthogonal(dim, rng)?;
    let q_pos = random_orthogonal(dim, rng)?;
    Ok(spectral_pair_from_parts(
        &lambda_neg,
        &lambda_pos,
        &q_neg,
        &q_pos,
    ))
}

/// PSD-only draw used for the resolvent-friendly image side, where both
/// coefficient matrices must be the same matrix.
fn generate_psd(dim: usize, rng: &mut Rng) -> Result<Matrix> {
    let lambda_pos: Vec<f64> = (0..dim)
        .map(|_| rng.uniform(POSITIVE_EIG_RANGE.0, POSITIVE_EIG_RANGE.1))
        .collect();
    let q = random_orthogonal(dim, rng)?;
    Ok(q.matmul(&Matrix::diagonal(&lambda_pos))
        .matmul(&q.transpose())
        .symmetrized())
}

fn quadratic_from_pair(dim: usize, pair: (Matrix, Matrix)) -> Result<Bifunction> {
    Bifunction::quadratic(pair.0, pair.1, Vector::zeros(dim))
}

pub fn generate_sep_instance(spec: &InstanceSpec) -> Result<SepInstance> {
    spec.validate()?;
    let mut rng = Rng::seeded(spec.seed);
    let f_c = quadratic_from_pair(spec.m, generate_spectral_pair(spec.m, &mut rng)?)?;
    let f_q = match spec.variant {
        Variant::General => quadratic_from_pair(spec.k, generate_spectral_pair(spec.k, &mut rng)?)?,
        Variant::ResolventFriendly => {
            let n = generate_psd(spec.k, &mut rng)?;
            Bifunction::quadratic(n.clone(), n, Vector::zeros(spec.k))?
        }
        Variant::Scep { .. } => {
            return Err(Error::Validation {
                field: "variant".into(),
                detail: "multi-component specs are built by generate_scep_instance".into(),
            })
        }
    };
    let a = uniform_matrix(spec.k, spec.m, spec.a_range.0, spec.a_range.1, &mut rng)?;
    SepInstance::new(
        Set::cube(spec.m, spec.box_c.0, spec.box_c.1)?,
        Set::cube(spec.k, spec.box_q.0, spec.box_q.1)?,
        a,
        f_c,
        f_q,
        Some(Vector::zeros(spec.m)),
    )
}

pub fn generate_scep_instance(spec: &InstanceSpec) -> Result<ScepInstance> {
    spec.validate()?;
    let (n_c, n_q) = match spec.variant {
        Variant::Scep {
            components_c,
            components_q,
        } => (components_c, components_q),
        _ => {
            return Err(Error::Validation {
                field: "variant".into(),
                detail: "generate_scep_instance needs a scep variant".into(),
            })
        }
    };
    let mut rng = Rng::seeded(spec.seed);
    let mut components_c = Vec::with_capacity(n_c);
    for _ in 0..n_c {
        components_c.push(quadratic_from_pair(
            spec.m,
            generate_spectral_pair(spec.m, &mut rng)?,
        )?);
    }
    let mut components_q = Vec::with_capacity(n_q);
    for _ in 0..n_q {
        components_q.push(quadratic_from_pair(
            spec.k,
            generate_spectral_pair(spec.k, &mut rng)?,
        )?);
    }
    let a = uniform_matrix(spec.k, spec.m, spec.a_range.0, spec.a_range.1, &mut rng)?;
    ScepInstance::new(
        Set::cube(spec.m, spec.box_c.0, spec.box_c.1)?,
        Set::cube(spec.k, spec.box_q.0, spec.box_q.1)?,
        a,
        components_c,
        components_q,
        Some(Vector::zeros(spec.m)),
    )
}

/// The planar instance on which plain pseudomonotonicity fails to deliver
/// convergence: whole-space sets, identity operator, and the antisymmetric
/// rotation bifunction on both sides. Unique solution `(0, 0)`.
pub fn make_rotation_instance() -> SepInstance {
    SepInstance::new(
        Set::WholeSpace { dim: 2 },
        Set::WholeSpace { dim: 2 },
        Matrix::identity(2),
        Bifunction::Rotation,
        Bifunction::Rotation,
        Some(Vector::zeros(2)),
    )
    .expect("fixed instance is well formed")
}

/// The planar instance with an empty solution set: `C` is the horizontal
/// ray `{(x, 0) : x ≥ 1}`, `Q` lies strictly above the axis, the operator is
/// the identity, and both bifunctions are indicators. `C ∩ Q = ∅`, so there
/// is no known solution to track.
pub fn make_empty_solution_instance() -> SepInstance {
    SepInstance::new(
        Set::AxisRay,
        Set::InvSqrtEpigraph,
        Matrix::identity(2),
        Bifunction::Indicator { set: Set::AxisRay },
        Bifunction::Indicator {
            set: Set::InvSqrtEpigraph,
        },
        None,
    )
    .expect("fixed instance is well formed")
}

const PSD_TOL: f64 = 1e-8;
const SOLUTION_SAMPLE_TOL: f64 = 1e-10;

/// Structural health report for a generated instance: spectral conditions on
/// every quadratic bifunction, feasibility of the origin, and a sampled
/// check that the recorded solution actually solves both sides. Returns the
/// list of violated properties (empty when healthy).
pub fn instance_health_report(inst: &ScepInstance, samples: usize) -> Vec<String> {
    let mut issues = Vec::new();
    let mut check_quadratic = |f: &Bifunction, label: String| {
        if let Bifunction::Quadratic {
            x_coeff, y_coeff, ..
        } = f
        {
            let (r_min, _) = symmetric_eigen_bounds(y_coeff);
            if r_min < -PSD_TOL {
                issues.push(format!(
                    "{label}: y-coefficient not PSD (min eig {r_min:.3e})"
                ));
            }
            let (_, t_max) = symmetric_eigen_bounds(&y_coeff.sub(x_coeff));
            if t_max > PSD_TOL {
                issues.push(format!(
                    "{label}: y-coefficient minus x-coefficient not NSD (max eig {t_max:.3e})"
                ));
            }
        }
    };
    for (i, f) in inst.components_c.iter().enumerate() {
        check_quadratic(f, format!("domain component {i}"));
    }
    for (j, f) in inst.components_q.iter().enumerate() {
        check_quadratic(f, format!("image component {j}"));
    }

    let zero_m = Vector::zeros(inst.a.cols());
    let zero_k = Vector::zeros(inst.a.rows());
    if !inst.c.contains(&zero_m, 0.0) {
        issues.push("origin is not in C".into());
    }
    if !inst.q.contains(&zero_k, 0.0) {
        issues.push("origin is not in Q".into());
    }
    if inst.a.apply(&zero_m).norm() != 0.0 {
        issues.push("A·0 is not 0".into());
    }

    if let Some(sol) = &inst.known_solution {
        let image = inst.a.apply(sol);
        let mut rng = Rng::seeded(0xA5).substream(inst.a.rows() as u64);
        let sample_box = |set: &Set, rng: &mut Rng| -> Option<Vector> {
            if let Set::Box(b) = set {
                Some(Vector(
                    (0..b.dim())
                        .map(|i| rng.uniform(b.lo()[i], b.hi()[i]))
                        .collect(),
                ))
            } else {
                None
            }
        };
        for s in 0..samples {
            if let Some(y) = sample_box(&inst.c, &mut rng) {
                for (i, f) in inst.components_c.iter().enumerate() {
                    if let Ok(v) = f.eval(sol, &y) {
                        if v < -SOLUTION_SAMPLE_TOL {
                            issues.push(format!(
                                "domain component {i} rejects the solution at sample {s}: f(x*, y) = {v:.3e}"
                            ));
                        }
                    }
                }
            }
            if let Some(v) = sample_box(&inst.q, &mut rng) {
                for (j, f) in inst.components_q.iter().enumerate() {
                    if let Ok(val) = f.eval(&image, &v) {
                        if val < -SOLUTION_SAMPLE_TOL {
                            issues.push(format!(
                                "image component {j} rejects the solution image at sample {s}: F(Ax*, v) = {val:.3e}"
                            ));
                        }
                    }
                }
            }
        }
    }
    issues
}
