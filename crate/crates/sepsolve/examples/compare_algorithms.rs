//! Compare the projection-only method against the projected subgradient +
//! proximal baseline on a resolvent-friendly instance, the same way
//! `sepbench compare` does.
//!
//! ```bash
//! cargo run --release -p sepsolve --example compare_algorithms
//! ```

use sepsolve::cli::{compare_runs, Algo, InstanceSource, RunConfig};
use sepsolve::report::{combined_d_csv, compare_report};
use sepsolve::{InstanceSpec, IterateTrace, Variant};

fn main() -> sepsolve::Result<()> {
    let spec = InstanceSpec::new(30, 20, 11, Variant::ResolventFriendly);
    let configs: Vec<RunConfig> = [Algo::Pm, Algo::Pspm]
        .iter()
        .map(|&algo| RunConfig {
            instance: InstanceSource::Spec(spec),
            algo,
            beta_exponent: 0.7,
            max_iter: 400,
            d_tol: Some(1e-2),
            residual_tol: None,
            resolvent_r: 1.0,
        })
        .collect();

    let (traces, summaries, _) = compare_runs(&configs)?;
    let names = vec!["pm".to_string(), "pspm".to_string()];
    let refs: Vec<&IterateTrace> = traces.iter().collect();

    let report = compare_report(&names, summaries, &refs, 1e-2, true);
    println!("threshold D <= {:.0e}", report.d_threshold);
    for run in &report.runs {
        println!(
            "  {:>4}: {} iterations to threshold, final D = {:.3e}, wall {:.1} ms",
            run.summary.algorithm,
            run.iterations_to_threshold
                .map_or("—".into(), |n| n.to_string()),
            run.summary.final_d.unwrap(),
            run.summary.wall_ms.unwrap_or(0.0),
        );
    }
    println!("ranking by iterations: {:?}", report.ranking_by_iterations);

    let csv = combined_d_csv(&names, &refs);
    println!("\nfirst rows of the aligned trace:");
    for line in csv.lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}
