//! The end-to-end pipeline: run the quantum walk to its peak, measure,
//! and recover the whole cluster with the classical vicinity search. Also
//! checks the query-cost theory: exactly sqrt(k) + 1 expected queries,
//! confirmed by enumeration and by seeded Monte Carlo.
//!
//! Run with: cargo run --release --example vicinity_demo

use lqwalk::{exact_expected_queries, monte_carlo_queries, run_vicinity_demo, Result, WeightPreset};

fn main() -> Result<()> {
    let report = run_vicinity_demo(20, 9, WeightPreset::Proposed, 1000, 1)?;
    println!(
        "instance: side {}, k {}, preset {} (loop weight {:.6e})",
        report.side, report.k, report.preset, report.loop_weight
    );
    println!(
        "quantum stage: {} steps, peak probability {:.4} (initial {:.4})",
        report.quantum_steps, report.peak_probability, report.initial_probability
    );
    if report.unreliable {
        println!("warning: no amplification; the sampled cell is unreliable");
    }
    println!(
        "classical stage: {} trials, mean queries {:.4} +/- {:.4}",
        report.trials, report.mean_queries, report.stderr_queries
    );
    println!(
        "every trial recovered the true cluster: {}",
        if report.recovered_ok { "yes" } else { "NO" }
    );

    println!("\nfirst trial, in full (start {}):", report.first_log.start);
    print!("{}", report.first_log.to_csv());
    println!(
        "corner {}, recovered {} cells",
        report.first_log.corner,
        report.first_log.recovered.len()
    );

    // The cost theory, independent of any quantum run: expectation over a
    // uniformly random start inside the cluster is sqrt(k) + 1.
    println!("\nexpected queries for a uniform start in the cluster:");
    println!("{:>4} {:>12} {:>12} {:>22}", "k", "exact", "sqrt(k)+1", "monte carlo (1e5)");
    for k in [1usize, 9, 25, 49] {
        let exact = exact_expected_queries(k)?;
        let (mean, stderr) = monte_carlo_queries(k, 100_000, 42)?;
        println!(
            "{k:>4} {exact:>12.6} {:>12.6} {mean:>15.4} +/- {stderr:.4}",
            (k as f64).sqrt() + 1.0
        );
    }
    Ok(())
}
