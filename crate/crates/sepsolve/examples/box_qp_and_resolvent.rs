//! The inner solvers on their own: box-constrained QP by accelerated
//! projected gradient, and the proximal/resolvent evaluation built on it.
//!
//! ```bash
//! cargo run -p sepsolve --example box_qp_and_resolvent
//! ```

use sepsolve::{
    prox_optimality_residual, solve_box_qp, solve_resolvent, Bifunction, BoxSet, Matrix, Rng,
    Vector,
};

fn main() -> sepsolve::Result<()> {
    // minimize <v, v> - 20·sum(v) over [-1, 5]^4: the unconstrained
    // minimizer (10, ..., 10) clips to the corner (5, ..., 5).
    let b = BoxSet::cube(4, -1.0, 5.0)?;
    let v = solve_box_qp(&Matrix::identity(4), &Vector(vec![-20.0; 4]), &b, 1e-10)?;
    println!("corner QP solution: {:?}", v.as_slice());

    // Resolvent of F(x, y) = <x + y, y - x> at u = (2, 2) with r = 1:
    // argmin ‖v‖² + ‖v - u‖² = u/2 = (1, 1).
    let q = BoxSet::cube(2, -2.0, 5.0)?;
    let f = Bifunction::quadratic(Matrix::identity(2), Matrix::identity(2), Vector::zeros(2))?;
    let u = Vector(vec![2.0, 2.0]);
    let z = solve_resolvent(&f, 1.0, &u, &q, 1e-10)?;
    println!("resolvent at (2, 2): ({:.9}, {:.9})", z[0], z[1]);

    // The defining inequality of the resolvent holds against sampled
    // directions in Q.
    let mut rng = Rng::seeded(5);
    let worst = prox_optimality_residual(&f, 1.0, &u, &z, &q, 500, &mut rng)?;
    println!(
        "worst sampled optimality value over 500 directions: {worst:.3e} (>= 0 up to tolerance)"
    );
    Ok(())
}
