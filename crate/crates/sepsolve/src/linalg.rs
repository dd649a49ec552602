//! Dense vectors and matrices plus the handful of spectral routines the
//! solvers need: power-iteration operator norms, seeded random orthogonal
//! matrices, and symmetric eigenvalue bounds for instance validation.
//!
//! Everything is `f64`, row-major, and desk-scale; there is no sparsity and
//! no attempt at cache blocking.

use crate::error::{Error, Result};
use crate::rng::Rng;
use serde::{Deserialize, Serialize};

/// Column vector with a fixed dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    pub fn ones(dim: usize) -> Self {
        Vector(vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`, the only fused update the iterations need.
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, a| m.max(a.abs()))
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.sub(other).norm()
    }

    pub fn dist_sq(&self, other: &Vector) -> f64 {
        self.sub(other).norm_sq()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.is_finite())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "Matrix::from_rows",
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, *v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// `A x`.
    pub fn apply(&self, x: &Vector) -> Vector {
        debug_assert_eq!(self.cols, x.dim());
        let mut out = vec![0.0; self.rows];
        for (row, o) in self.data.chunks_exact(self.cols).zip(out.iter_mut()) {
            *o = row.iter().zip(&x.0).map(|(a, b)| a * b).sum();
        }
        Vector(out)
    }

    /// `Aᵀ x` (the adjoint in Euclidean space).
    pub fn apply_transpose(&self, x: &Vector) -> Vector {
        debug_assert_eq!(self.rows, x.dim());
        let mut out = vec![0.0; self.cols];
        for (row, xi) in self.data.chunks_exact(self.cols).zip(&x.0) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
        Vector(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `(A + Aᵀ) / 2`; exact symmetry for downstream eigenvalue routines.
    pub fn symmetrized(&self) -> Matrix {
        debug_assert_eq!(self.rows, self.cols);
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i))
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, a| m.max(a.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.is_finite())
    }
}

/// Spectral norm `‖A‖₂` by power iteration on `AᵀA` with a deterministic
/// start vector (normalized all-ones, falling back to canonical basis vectors
/// if the all-ones vector happens to lie in the kernel).
///
/// The returned value is the converged estimate inflated by `(1 + tol)`, so
/// step-size bounds of the form `μ ≤ 1/‖A‖²` derived from it remain valid
/// despite estimation error. Errors after `max_iter` iterations without the
/// Rayleigh quotient settling, carrying the last estimate.
pub fn operator_norm(a: &Matrix, tol: f64, max_iter: usize) -> Result<f64> {
    assert!(tol > 0.0, "operator_norm needs a positive tolerance");
    let n = a.cols();
    let gram = |v: &Vector| a.apply_transpose(&a.apply(v));

    let mut v = Vector::ones(n).scale(1.0 / (n as f64).sqrt());
    if gram(&v).norm() == 0.0 {
        // All-ones lies in ker(AᵀA); sweep canonical directions.
        let mut found = false;
        for i in 0..n {
            let mut e = Vector::zeros(n);
            e[i] = 1.0;
            if gram(&e).norm() > 0.0 {
                v = e;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::ZeroMatrix);
        }
    }

    let mut theta_prev = f64::NAN;
    let mut delta_prev = f64::NAN;
    let mut settled = 0usize;
    for _ in 0..max_iter {
        let bv = gram(&v);
        let theta = v.dot(&bv); // Rayleigh quotient of AᵀA; ‖v‖ = 1
        let bn = bv.norm();
        if bn == 0.0 {
            // v drifted into the kernel; the largest singular value is 0 only
            // for the zero matrix, which was excluded above.
            return Err(Error::NormEstimateStalled {
                last_estimate: theta.max(0.0).sqrt(),
                iters: max_iter,
            });
        }
        v = bv.scale(1.0 / bn);
        if theta_prev.is_finite() {
            let delta = (theta - theta_prev).abs();
            // Rayleigh increments decay geometrically with ratio q, so the
            // remaining error is about delta * q / (1 - q). Stopping at
            // delta <= tol * theta * (1 - q) keeps the estimate within
            // tol * theta even when a small spectral gap makes q close to 1.
            let q = if delta_prev.is_finite() && delta_prev > 0.0 {
                (delta / delta_prev).min(0.99)
            } else {
                0.0
            };
            if delta <= tol * theta.abs() * (1.0 - q) {
                settled += 1;
                // Two consecutive settled steps guard against transient
                // increment dips.
                if settled >= 2 {
                    return Ok(theta.max(0.0).sqrt() * (1.0 + tol));
                }
            } else {
                settled = 0;
            }
            delta_prev = delta;
        }
        theta_prev = theta;
    }
    Err(Error::NormEstimateStalled {
        last_estimate: theta_prev.max(0.0).sqrt(),
        iters: max_iter,
    })
}

/// Default tolerance used when certifying `‖A‖` for step-size bounds.
pub const NORM_CERTIFICATION_TOL: f64 = 1e-6;
const NORM_CERTIFICATION_MAX_ITER: usize = 20_000;

/// The operator norm at the crate's certification tolerance, inflated so that
/// `1/result²` is a safe value for step sizes bounded by `1/‖A‖²`.
pub fn certified_operator_norm(a: &Matrix) -> Result<f64> {
    operator_norm(a, NORM_CERTIFICATION_TOL, NORM_CERTIFICATION_MAX_ITER)
}

const ORTHOGONAL_MAX_RETRIES: usize = 8;

/// Random orthogonal matrix: QR of a standard-normal draw via modified
/// Gram-Schmidt with one reorthogonalization pass. The normal entries are
/// drawn row-major. Redraws (bounded) on a rank-deficient sample.
pub fn random_orthogonal(dim: usize, rng: &mut Rng) -> Result<Matrix> {
    assert!(dim >= 1);
    'redraw: for _ in 0..ORTHOGONAL_MAX_RETRIES {
        let g = Matrix::from_fn(dim, dim, |_, _| rng.standard_normal());
        // Columns of q are built in place.
        let mut q: Vec<Vector> = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut v = Vector((0..dim).map(|i| g.get(i, j)).collect());
            let original = v.norm();
            for _pass in 0..2 {
                for q_i in &q {
                    let r = q_i.dot(&v);
                    v = v.axpy(-r, q_i);
                }
            }
            let nv = v.norm();
            if nv <= 1e-12 * original.max(1.0) {
                continue 'redraw;
            }
            q.push(v.scale(1.0 / nv));
        }
        return Ok(Matrix::from_fn(dim, dim, |i, j| q[j][i]));
    }
    Err(Error::RankDeficientDraw {
        retries: ORTHOGONAL_MAX_RETRIES,
    })
}

/// Matrix with i.i.d. uniform entries in `[lo, hi)`, filled row-major.
pub fn uniform_matrix(rows: usize, cols: usize, lo: f64, hi: f64, rng: &mut Rng) -> Result<Matrix> {
    if !(lo < hi) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    Ok(Matrix::from_fn(rows, cols, |_, _| rng.uniform(lo, hi)))
}

/// All eigenvalues of a symmetric matrix by the cyclic Jacobi method,
/// ascending. Used for PSD/NSD validation of generated instances and the
/// convexity pre-check of the box QP solver.
pub fn symmetric_eigenvalues(s: &Matrix) -> Vec<f64> {
    assert_eq!(s.rows(), s.cols());
    let n = s.rows();
    if n == 0 {
        return Vec::new();
    }
    let mut a = s.symmetrized();
    let scale = a.frobenius().max(1.0);
    let tol = 1e-14 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s_ = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s_ * akq);
                    a.set(k, q, s_ * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s_ * aqk);
                    a.set(q, k, s_ * apk + c * aqk);
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Bounds `(λ_min, λ_max)` of a symmetric matrix.
pub fn symmetric_eigen_bounds(s: &Matrix) -> (f64, f64) {
    let eigs = symmetric_eigenvalues(s);
    (eigs[0], *eigs.last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_arithmetic() {
        let a = Vector(vec![1.0, 2.0, 3.0]);
        let b = Vector(vec![4.0, -1.0, 0.5]);
        assert_eq!(a.add(&b).0, vec![5.0, 1.0, 3.5]);
        assert_eq!(a.sub(&b).0, vec![-3.0, 3.0, 2.5]);
        assert_eq!(a.dot(&b), 4.0 - 2.0 + 1.5);
        assert_eq!(a.axpy(2.0, &b).0, vec![9.0, 0.0, 4.0]);
    }

    #[test]
    fn matvec_and_adjoint_agree_with_definition() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![0.0, -1.0, 4.0]]).unwrap();
        let x = Vector(vec![1.0, 1.0, 1.0]);
        assert_eq!(a.apply(&x).0, vec![6.0, 3.0]);
        let y = Vector(vec![2.0, 3.0]);
        // Aᵀy computed by hand.
        assert_eq!(a.apply_transpose(&y).0, vec![2.0, 1.0, 18.0]);
        // adjoint identity <Ax, y> = <x, Aᵀy>
        assert!((a.apply(&x).dot(&y) - x.dot(&a.apply_transpose(&y))).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_identity() {
        let a = Matrix::identity(3);
        let tol = 1e-10;
        let lam = operator_norm(&a, tol, 1000).unwrap();
        assert!((lam / (1.0 + tol) - 1.0).abs() <= tol);
    }

    #[test]
    fn operator_norm_diagonal_spectrum() {
        let a = Matrix::diagonal(&[3.0, 1.0]);
        let tol = 1e-10;
        let lam = operator_norm(&a, tol, 10_000).unwrap();
        assert!((lam / (1.0 + tol) - 3.0).abs() <= 3.0 * 1e-8);
    }

    #[test]
    fn operator_norm_survives_all_ones_kernel() {
        // AᵀA annihilates the all-ones vector; the canonical fallback must
        // still find ‖A‖ = √2.
        let a = Matrix::from_rows(&[vec![1.0, -1.0]]).unwrap();
        let lam = operator_norm(&a, 1e-10, 10_000).unwrap();
        assert!((lam - 2.0_f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn operator_norm_carries_last_estimate_on_stall() {
        let a = Matrix::diagonal(&[3.0, 1.0]);
        match operator_norm(&a, 1e-12, 1) {
            Err(Error::NormEstimateStalled { last_estimate, .. }) => {
                assert!(last_estimate.is_finite());
            }
            other => panic!("expected a stall, got {other:?}"),
        }
    }

    #[test]
    fn operator_norm_rejects_zero_matrix() {
        let a = Matrix::zeros(2, 2);
        assert!(matches!(
            operator_norm(&a, 1e-8, 100),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn random_orthogonal_dim_one_is_a_sign() {
        let mut rng = Rng::seeded(5);
        let q = random_orthogonal(1, &mut rng).unwrap();
        assert!((q.get(0, 0).abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_orthogonal_is_orthogonal_and_deterministic() {
        let q1 = random_orthogonal(4, &mut Rng::seeded(42)).unwrap();
        let q2 = random_orthogonal(4, &mut Rng::seeded(42)).unwrap();
        assert_eq!(q1, q2);
        let qtq = q1.transpose().matmul(&q1);
        let err = qtq.sub(&Matrix::identity(4)).max_abs();
        assert!(err <= 1e-10, "‖QᵀQ - I‖_max = {err}");
    }

    #[test]
    fn random_orthogonal_preserves_norms() {
        let mut rng = Rng::seeded(11);
        for dim in [2usize, 5, 9] {
            let q = random_orthogonal(dim, &mut rng).unwrap();
            for _ in 0..10 {
                let x = Vector((0..dim).map(|_| rng.standard_normal()).collect());
                assert!((q.apply(&x).norm() - x.norm()).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn uniform_matrix_range_and_determinism() {
        assert!(matches!(
            uniform_matrix(2, 2, 0.0, 0.0, &mut Rng::seeded(0)),
            Err(Error::EmptyInterval { .. })
        ));
        let a = uniform_matrix(2, 2, -10.0, 10.0, &mut Rng::seeded(9)).unwrap();
        assert!(a.data().iter().all(|v| (-10.0..10.0).contains(v)));
        let b = uniform_matrix(2, 2, -10.0, 10.0, &mut Rng::seeded(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn jacobi_eigenvalues_on_known_matrices() {
        let eigs = symmetric_eigenvalues(&Matrix::diagonal(&[3.0, -1.0, 0.5]));
        assert!((eigs[0] + 1.0).abs() < 1e-12);
        assert!((eigs[1] - 0.5).abs() < 1e-12);
        assert!((eigs[2] - 3.0).abs() < 1e-12);
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let s = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let (lo, hi) = symmetric_eigen_bounds(&s);
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 3.0).abs() < 1e-12);
    }
}
