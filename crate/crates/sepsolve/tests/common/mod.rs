//! Independent oracles used by the integration tests. These deliberately
//! avoid the library's own spectral routines: the SVD here is a one-sided
//! Jacobi (Hestenes) orthogonalization, the projections and minimizers are
//! brute-force grids.

#![allow(dead_code)]

use sepsolve::{BoxSet, Matrix, Rng, Vector};

/// All singular values of a dense matrix by one-sided Jacobi
/// orthogonalization of the columns. Independent of the library's
/// power-iteration and symmetric-Jacobi paths.
#[allow(clippy::needless_range_loop)]
pub fn svd_singular_values(a: &Matrix) -> Vec<f64> {
    // Work on the tall orientation so columns outnumber nothing.
    let work = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let (m, n) = (work.rows(), work.cols());
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..m).map(|i| work.get(i, j)).collect())
        .collect();

    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let (aii, ajj) = (dot(&cols[i], &cols[i]), dot(&cols[j], &cols[j]));
                let aij = dot(&cols[i], &cols[j]);
                if aij.abs() <= 1e-15 * (aii * ajj).sqrt().max(f64::MIN_POSITIVE) {
                    continue;
                }
                rotated = true;
                let zeta = (ajj - aii) / (2.0 * aij);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..m {
                    let vi = cols[i][r];
                    let vj = cols[j][r];
                    cols[i][r] = c * vi - s * vj;
                    cols[j][r] = s * vi + c * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigmas: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    sigmas.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sigmas
}

pub fn spectral_norm_oracle(a: &Matrix) -> f64 {
    svd_singular_values(a)[0]
}

/// Brute-force box projection: per coordinate, the closest point of a dense
/// grid over `[lo, hi]`.
pub fn grid_box_projection(x: &Vector, b: &BoxSet, points_per_axis: usize) -> Vector {
    Vector(
        (0..x.dim())
            .map(|i| {
                let (lo, hi) = (b.lo()[i], b.hi()[i]);
                let mut best = lo;
                let mut best_val = f64::INFINITY;
                for g in 0..=points_per_axis {
                    let t = lo + (hi - lo) * (g as f64) / (points_per_axis as f64);
                    let val = (t - x[i]) * (t - x[i]);
                    if val < best_val {
                        best_val = val;
                        best = t;
                    }
                }
                best
            })
            .collect(),
    )
}

/// Multi-resolution grid minimizer of `⟨M v, v⟩ + ⟨linear, v⟩` over a box:
/// a coarse scan followed by repeated refinement around the incumbent until
/// the cell size drops to `final_step`. Suitable for smooth strongly convex
/// objectives in low dimension.
#[allow(clippy::needless_range_loop)]
pub fn grid_qp_minimizer(m: &Matrix, linear: &Vector, b: &BoxSet, final_step: f64) -> Vector {
    let dim = b.dim();
    assert!(dim <= 3, "grid search is only viable in low dimension");
    let obj = |v: &Vector| m.apply(v).dot(v) + linear.dot(v);

    let mut lo: Vec<f64> = b.lo().as_slice().to_vec();
    let mut hi: Vec<f64> = b.hi().as_slice().to_vec();
    let per_axis = 20usize;
    let mut best = Vector(lo.iter().zip(&hi).map(|(&l, &h)| 0.5 * (l + h)).collect());
    loop {
        let steps: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| (h - l) / per_axis as f64)
            .collect();
        let mut best_val = f64::INFINITY;
        let mut counter = vec![0usize; dim];
        'scan: loop {
            let v = Vector(
                (0..dim)
                    .map(|d| (lo[d] + steps[d] * counter[d] as f64).min(hi[d]))
                    .collect(),
            );
            let val = obj(&v);
            if val < best_val {
                best_val = val;
                best = v;
            }
            for d in 0..dim {
                counter[d] += 1;
                if counter[d] <= per_axis {
                    continue 'scan;
                }
                counter[d] = 0;
            }
            break;
        }
        let max_step = steps.iter().cloned().fold(0.0_f64, f64::max);
        if max_step <= final_step {
            return best;
        }
        // Shrink the window to ±2 cells around the incumbent, clipped to
        // the original box.
        for d in 0..dim {
            lo[d] = (best[d] - 2.0 * steps[d]).max(b.lo()[d]);
            hi[d] = (best[d] + 2.0 * steps[d]).min(b.hi()[d]);
        }
    }
}

/// Brute-force minimizer of `h(t) = (t - x)² + 1/t` over `[x, x + span]` on
/// a grid with the given step.
pub fn grid_boundary_minimizer(x: f64, span: f64, step: f64) -> f64 {
    let h = |t: f64| (t - x) * (t - x) + 1.0 / t;
    let n = (span / step) as usize;
    let mut best_t = x;
    let mut best_val = f64::INFINITY;
    for i in 0..=n {
        let t = x + step * i as f64;
        let val = h(t);
        if val < best_val {
            best_val = val;
            best_t = t;
        }
    }
    best_t
}

/// A random matrix with i.i.d. uniform entries in `[-scale, scale]`.
pub fn random_matrix(rows: usize, cols: usize, scale: f64, rng: &mut Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.uniform(-scale, scale))
}

pub fn random_vector(dim: usize, lo: f64, hi: f64, rng: &mut Rng) -> Vector {
    Vector((0..dim).map(|_| rng.uniform(lo, hi)).collect())
}
