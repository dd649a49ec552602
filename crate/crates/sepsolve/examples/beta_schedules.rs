//! How the step exponent shapes convergence: run the projection method
//! under `beta_n = 1/(n+1)^s` for six choices of `s` on one instance and
//! report when each run first reaches `D <= 1e-3 * D0`.
//!
//! ```bash
//! cargo run --release -p sepsolve --example beta_schedules
//! ```

use sepsolve::{
    generate_sep_instance, run_pm, InstanceSpec, ParamSchedule, RunOptions, StopRule, Variant,
    Vector,
};

fn main() -> sepsolve::Result<()> {
    let spec = InstanceSpec::new(30, 20, 42, Variant::General);
    let inst = generate_sep_instance(&spec)?;
    let norm = inst.certified_norm()?;
    let x0 = Vector::ones(spec.m);

    println!("   s    certified   iterations to D <= 1e-3*D0   final D");
    for s in [1.0, 0.9, 0.8, 0.7, 0.6, 0.51] {
        let sched = ParamSchedule::inverse_power_preset(s, norm)?;
        let trace = run_pm(
            &inst,
            &x0,
            &sched,
            &StopRule::max_iter(400),
            &RunOptions::default(),
        )?;
        let d0 = trace.initial_d().unwrap();
        let hit = trace.iterations_to_d(1e-3 * d0);
        println!(
            "{:>5}   {:>9}   {:>27}   {:>9.3e}",
            s,
            sched.certified(),
            hit.map_or("never".to_string(), |n| n.to_string()),
            trace.final_d.unwrap()
        );
    }
    println!("\nSlowly decaying steps (small s) move fast early; the natural");
    println!("sequence s = 1 shrinks its steps quickly and stalls in comparison.");
    Ok(())
}
