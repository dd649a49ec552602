//! Cross-checks of the numeric kernels against independent brute-force
//! oracles: SVD for the power-iteration norm, dense grids for projections
//! and the box QP, and sampled optimality for the resolvent.

mod common;

use common::{
    grid_boundary_minimizer, grid_box_projection, grid_qp_minimizer, random_matrix, random_vector,
    spectral_norm_oracle,
};
use sepsolve::{
    generate_sep_instance, operator_norm, prox_optimality_residual, solve_box_qp, solve_resolvent,
    Bifunction, BoxSet, InstanceSpec, Matrix, Rng, Set, Variant, Vector,
};

#[test]
fn power_iteration_matches_svd_oracle_on_seeded_matrix() {
    let mut rng = Rng::seeded(2024);
    let a = random_matrix(5, 4, 10.0, &mut rng);
    let tol = 1e-10;
    let estimate = operator_norm(&a, tol, 50_000).unwrap() / (1.0 + tol);
    let oracle = spectral_norm_oracle(&a);
    assert!(
        (estimate - oracle).abs() <= 1e-8 * oracle,
        "estimate {estimate} vs oracle {oracle}"
    );
}

#[test]
fn power_iteration_band_on_fifty_seeded_matrices() {
    let tol = 1e-10;
    for seed in 0..50u64 {
        let mut rng = Rng::seeded(seed);
        let rows = 1 + (rng.uniform(0.0, 20.0) as usize);
        let cols = 1 + (rng.uniform(0.0, 20.0) as usize);
        let a = random_matrix(rows, cols, 10.0, &mut rng);
        let raw = operator_norm(&a, tol, 100_000).unwrap() / (1.0 + tol);
        let truth = spectral_norm_oracle(&a);
        assert!(
            raw <= truth * (1.0 + tol) && raw >= truth * (1.0 - tol),
            "seed {seed} ({rows}x{cols}): estimate {raw} vs oracle {truth}"
        );
    }
}

#[test]
fn box_projection_matches_grid_oracle() {
    let mut rng = Rng::seeded(31);
    for case in 0..100 {
        let dim = 1 + case % 5;
        let b = BoxSet::cube(dim, -1.0, 5.0).unwrap();
        let x = random_vector(dim, -12.0, 12.0, &mut rng);
        let exact = b.project(&x);
        let gridded = grid_box_projection(&x, &b, 12_000);
        for i in 0..dim {
            assert!(
                (exact[i] - gridded[i]).abs() <= 1e-3,
                "case {case}, coord {i}: {} vs {}",
                exact[i],
                gridded[i]
            );
        }
    }
}

#[test]
fn epigraph_boundary_minimizer_matches_grid() {
    let p = Set::InvSqrtEpigraph
        .project(&Vector(vec![2.0, 0.0]))
        .unwrap();
    let grid_t = grid_boundary_minimizer(2.0, 2.0, 1e-6);
    assert!(
        (p[0] - grid_t).abs() <= 1e-5,
        "bisection {} vs grid {}",
        p[0],
        grid_t
    );
}

#[test]
fn box_qp_matches_multiresolution_grid_in_3d() {
    let mut rng = Rng::seeded(77);
    for case in 0..8 {
        // Symmetric part with controlled conditioning plus a skew part
        // (which the quadratic form cannot see).
        let q = sepsolve::random_orthogonal(3, &mut rng).unwrap();
        let eigs: Vec<f64> = (0..3).map(|_| rng.uniform(0.5, 3.0)).collect();
        let sym = q
            .matmul(&Matrix::diagonal(&eigs))
            .matmul(&q.transpose())
            .symmetrized();
        let r = random_matrix(3, 3, 1.0, &mut rng);
        let skew = r.sub(&r.transpose()).scale(0.5);
        let m = sym.scale(0.5).add(&skew);
        let linear = random_vector(3, -3.0, 3.0, &mut rng);
        let b = BoxSet::cube(3, -1.0, 5.0).unwrap();

        let solved = solve_box_qp(&m, &linear, &b, 1e-10).unwrap();
        let gridded = grid_qp_minimizer(&m, &linear, &b, 1e-4);
        assert!(
            solved.dist(&gridded) <= 1e-3,
            "case {case}: {solved:?} vs {gridded:?}"
        );
    }
}

#[test]
fn resolvent_optimality_on_generated_instances() {
    for seed in 1..=10u64 {
        let inst =
            generate_sep_instance(&InstanceSpec::new(4, 3, seed, Variant::ResolventFriendly))
                .unwrap();
        let q = match &inst.q {
            Set::Box(b) => b.clone(),
            _ => unreachable!(),
        };
        let mut rng = Rng::seeded(seed ^ 0xBEEF);
        let u = random_vector(3, -5.0, 5.0, &mut rng);
        let z = solve_resolvent(&inst.f_q, 1.0, &u, &q, 1e-10).unwrap();
        let worst = prox_optimality_residual(&inst.f_q, 1.0, &u, &z, &q, 100, &mut rng).unwrap();
        assert!(worst >= -1e-6, "seed {seed}: worst sampled value {worst}");
    }
}

#[test]
fn resolvent_closed_form_reference_case() {
    let q = BoxSet::cube(2, -2.0, 5.0).unwrap();
    let f =
        Bifunction::quadratic(Matrix::identity(2), Matrix::identity(2), Vector::zeros(2)).unwrap();
    let z = solve_resolvent(&f, 1.0, &Vector(vec![2.0, 2.0]), &q, 1e-10).unwrap();
    assert!((z[0] - 1.0).abs() <= 1e-6);
    assert!((z[1] - 1.0).abs() <= 1e-6);
}
