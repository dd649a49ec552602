//! Assembled problem instances.
//!
//! A split equilibrium instance couples an equilibrium problem on `C ⊆ ℝ^m`
//! (bifunction `f_c`) with one on `Q ⊆ ℝ^k` (bifunction `f_q`) through a
//! linear operator `A : ℝ^m → ℝ^k`: a solution is a point of `C` solving the
//! first problem whose image `A x` solves the second. The common variant
//! carries finitely many bifunctions on each side, all of which must be
//! solved simultaneously.

use crate::bifunction::Bifunction;
use crate::error::{Error, Result};
use crate::linalg::{certified_operator_norm, Matrix, Vector};
use crate::sets::Set;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SepInstance {
    pub c: Set,
    pub q: Set,
    pub a: Matrix,
    pub f_c: Bifunction,
    pub f_q: Bifunction,
    pub known_solution: Option<Vector>,
}

impl SepInstance {
    pub fn new(
        c: Set,
        q: Set,
        a: Matrix,
        f_c: Bifunction,
        f_q: Bifunction,
        known_solution: Option<Vector>,
    ) -> Result<Self> {
        let inst = SepInstance {
            c,
            q,
            a,
            f_c,
            f_q,
            known_solution,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        check_dims(
            &self.c,
            &self.q,
            &self.a,
            self.known_solution.as_ref(),
            &[(&self.f_c, "f_c"), (&self.f_q, "f_q")],
        )
    }

    /// `(m, k)`: the domain and image dimensions.
    pub fn dims(&self) -> (usize, usize) {
        (self.a.cols(), self.a.rows())
    }

    /// Certified (slightly inflated) operator norm of `A`, for step bounds.
    pub fn certified_norm(&self) -> Result<f64> {
        certified_operator_norm(&self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScepInstance {
    pub c: Set,
    pub q: Set,
    pub a: Matrix,
    pub components_c: Vec<Bifunction>,
    pub components_q: Vec<Bifunction>,
    pub known_solution: Option<Vector>,
}

impl ScepInstance {
    pub fn new(
        c: Set,
        q: Set,
        a: Matrix,
        components_c: Vec<Bifunction>,
        components_q: Vec<Bifunction>,
        known_solution: Option<Vector>,
    ) -> Result<Self> {
        let inst = ScepInstance {
            c,
            q,
            a,
            components_c,
            components_q,
            known_solution,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components_c.is_empty() {
            return Err(Error::Validation {
                field: "components_c".into(),
                detail: "need at least one bifunction on C".into(),
            });
        }
        if self.components_q.is_empty() {
            return Err(Error::Validation {
                field: "components_q".into(),
                detail: "need at least one bifunction on Q".into(),
            });
        }
        let mut named: Vec<(&Bifunction, &'static str)> = Vec::new();
        for f in &self.components_c {
            named.push((f, "components_c"));
        }
        for f in &self.components_q {
            named.push((f, "components_q"));
        }
        check_dims(
            &self.c,
            &self.q,
            &self.a,
            self.known_solution.as_ref(),
            &named,
        )
    }

    /// Wrap a plain split instance as a one-component common instance.
    pub fn from_sep(inst: &SepInstance) -> Self {
        ScepInstance {
            c: inst.c.clone(),
            q: inst.q.clone(),
            a: inst.a.clone(),
            components_c: vec![inst.f_c.clone()],
            components_q: vec![inst.f_q.clone()],
            known_solution: inst.known_solution.clone(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a.cols(), self.a.rows())
    }

    pub fn certified_norm(&self) -> Result<f64> {
        certified_operator_norm(&self.a)
    }
}

fn check_dims(
    c: &Set,
    q: &Set,
    a: &Matrix,
    known_solution: Option<&Vector>,
    bifunctions: &[(&Bifunction, &'static str)],
) -> Result<()> {
    let m = a.cols();
    let k = a.rows();
    if c.dim() != m {
        return Err(Error::DimensionMismatch {
            context: "instance: dim(C) must equal cols(A)",
            expected: m,
            got: c.dim(),
        });
    }
    if q.dim() != k {
        return Err(Error::DimensionMismatch {
            context: "instance: dim(Q) must equal rows(A)",
            expected: k,
            got: q.dim(),
        });
    }
    for (f, name) in bifunctions {
        let want = if name.ends_with("_q") || *name == "components_q" {
            k
        } else {
            m
        };
        if f.dim() != want {
            return Err(Error::DimensionMismatch {
                context: "instance: bifunction dimension",
                expected: want,
                got: f.dim(),
            });
        }
    }
    if let Some(sol) = known_solution {
        if sol.dim() != m {
            return Err(Error::DimensionMismatch {
                context: "instance: known_solution",
                expected: m,
                got: sol.dim(),
            });
        }
    }
    if !a.is_finite() {
        return Err(Error::Validation {
            field: "a".into(),
            detail: "operator matrix contains non-finite entries".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation_like() -> SepInstance {
        SepInstance::new(
            Set::WholeSpace { dim: 2 },
            Set::WholeSpace { dim: 2 },
            Matrix::identity(2),
            Bifunction::Rotation,
            Bifunction::Rotation,
            Some(Vector::zeros(2)),
        )
        .unwrap()
    }

    #[test]
    fn dims_are_cols_by_rows() {
        let inst = rotation_like();
        assert_eq!(inst.dims(), (2, 2));
    }

    #[test]
    fn dimension_mismatches_are_caught() {
        let bad = SepInstance::new(
            Set::WholeSpace { dim: 3 },
            Set::WholeSpace { dim: 2 },
            Matrix::identity(2),
            Bifunction::Rotation,
            Bifunction::Rotation,
            None,
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn scep_needs_components() {
        let err = ScepInstance::new(
            Set::WholeSpace { dim: 2 },
            Set::WholeSpace { dim: 2 },
            Matrix::identity(2),
            vec![],
            vec![Bifunction::Rotation],
            None,
        );
        assert!(matches!(err, Err(Error::Validation { .. })));
    }

    #[test]
    fn from_sep_is_single_component() {
        let inst = rotation_like();
        let scep = ScepInstance::from_sep(&inst);
        assert_eq!(scep.components_c.len(), 1);
        assert_eq!(scep.components_q.len(), 1);
        assert_eq!(scep.known_solution, inst.known_solution);
    }
}
