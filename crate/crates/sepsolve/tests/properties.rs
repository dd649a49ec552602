//! Property tests for the projection and bifunction contracts.

mod common;

use proptest::prelude::*;
use sepsolve::{generate_sep_instance, uniform_matrix, BoxSet, InstanceSpec, Rng, Variant, Vector};

fn vec_strategy(dim: usize, bound: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-bound..bound, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// ⟨P(x) - P(y), x - y⟩ ≥ ‖P(x) - P(y)‖² for box projections.
    #[test]
    fn box_projection_is_firmly_nonexpansive(
        dim in 1usize..6,
        x in vec_strategy(6, 20.0),
        y in vec_strategy(6, 20.0),
    ) {
        let b = BoxSet::cube(dim, -1.0, 5.0).unwrap();
        let x = Vector(x[..dim].to_vec());
        let y = Vector(y[..dim].to_vec());
        let px = b.project(&x);
        let py = b.project(&y);
        let lhs = px.sub(&py).dot(&x.sub(&y));
        let rhs = px.sub(&py).norm_sq();
        prop_assert!(lhs >= rhs - 1e-10, "{lhs} < {rhs}");
    }

    /// ‖x - P(y)‖² + ‖P(y) - y‖² ≤ ‖x - y‖² for x in the box.
    #[test]
    fn box_projection_distance_identity(
        dim in 1usize..6,
        x_raw in vec_strategy(6, 20.0),
        y in vec_strategy(6, 20.0),
    ) {
        let b = BoxSet::cube(dim, -1.0, 5.0).unwrap();
        // Force x into the box; the inequality requires it.
        let x = b.project(&Vector(x_raw[..dim].to_vec()));
        let y = Vector(y[..dim].to_vec());
        let py = b.project(&y);
        let lhs = x.dist_sq(&py) + py.dist_sq(&y);
        let rhs = x.dist_sq(&y);
        prop_assert!(lhs <= rhs + 1e-10, "{lhs} > {rhs}");
    }

    /// Projections onto boxes are exactly idempotent.
    #[test]
    fn box_projection_is_idempotent(
        dim in 1usize..6,
        y in vec_strategy(6, 20.0),
    ) {
        let b = BoxSet::cube(dim, -1.0, 5.0).unwrap();
        let py = b.project(&Vector(y[..dim].to_vec()));
        prop_assert_eq!(b.project(&py), py);
    }

    /// Generated quadratic bifunctions vanish on the diagonal and are
    /// monotone: f(x,y) + f(y,x) ≤ 0 up to float noise.
    #[test]
    fn generated_bifunction_is_monotone(
        seed in 0u64..500,
        x in vec_strategy(3, 6.0),
        y in vec_strategy(3, 6.0),
    ) {
        let inst = generate_sep_instance(&InstanceSpec::new(3, 2, seed, Variant::General)).unwrap();
        let x = Vector(x);
        let y = Vector(y);
        prop_assert_eq!(inst.f_c.eval(&x, &x).unwrap(), 0.0);
        let s = inst.f_c.eval(&x, &y).unwrap() + inst.f_c.eval(&y, &x).unwrap();
        prop_assert!(s <= 1e-8 * y.sub(&x).norm_sq().max(1.0), "monotonicity violation {s}");
    }

    /// Draws are pure functions of (inputs, seed).
    #[test]
    fn rng_consumers_are_deterministic(seed in any::<u64>()) {
        let a = uniform_matrix(3, 2, -10.0, 10.0, &mut Rng::seeded(seed)).unwrap();
        let b = uniform_matrix(3, 2, -10.0, 10.0, &mut Rng::seeded(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
