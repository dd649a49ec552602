//! What happens without a solution: on a pair of disjoint feasible sets the
//! iteration provably diverges, gaining at least `1/(8 x₁²)` in its first
//! coordinate at every step.
//!
//! ```bash
//! cargo run -p sepsolve --example empty_solution_counterexample
//! ```

use sepsolve::{run_empty_solution_counterexample, Vector};

fn main() -> sepsolve::Result<()> {
    let report = run_empty_solution_counterexample(&Vector(vec![1.0, 0.0]), 1000)?;

    println!("verdict: {:?}", report.verdict);
    println!("\n   n      x₁        guaranteed gain this step");
    for n in [0usize, 1, 10, 100, 500, 999] {
        if let Some(row) = report.trace.rows.get(n) {
            let x1 = row.x.as_ref().unwrap()[0];
            println!("{:>4}   {:>8.5}   {:>10.3e}", n, x1, 1.0 / (8.0 * x1 * x1));
        }
    }
    println!(" end   {:>8.5}", report.trace.final_x[0]);
    println!("\nx₁ grows without bound (cube-root rate), so the iterates");
    println!("diverge: there is simply nothing to converge to.");
    Ok(())
}
