//! A pseudomonotone problem the method cannot solve: the planar rotation
//! bifunction is flat against its unique solution in every direction, and
//! the iteration strictly increases `‖x_n‖` at every step. The run is
//! certified against the closed-form recursion of the instance.
//!
//! ```bash
//! cargo run -p sepsolve --example rotation_counterexample
//! ```

use sepsolve::counterexample::rotation_default_schedule;
use sepsolve::{run_rotation_counterexample, Vector};

fn main() -> sepsolve::Result<()> {
    let sched = rotation_default_schedule()?;
    let report = run_rotation_counterexample(&Vector(vec![1.0, 0.0]), &sched, 500)?;

    println!("verdict: {:?}", report.verdict);
    println!(
        "engine vs closed form: max per-step gap {:.3e}",
        report.max_closed_form_gap
    );
    println!("\n   n     ‖x_n‖");
    for n in [0usize, 1, 10, 50, 100, 250, 499] {
        if let Some(row) = report.trace.rows.get(n) {
            println!("{:>4}   {:.8}", n, row.x.as_ref().unwrap().norm());
        }
    }
    println!(" end   {:.8}", report.trace.final_x.norm());
    println!("\nThe norm never decreases: the iterates march away from the");
    println!("solution (0, 0) even though one exists.");
    Ok(())
}
