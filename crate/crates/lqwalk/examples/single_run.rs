//! Evolve one instance — a 3x3 cluster on a 20x20 torus with the tuned
//! self-loop weight — and watch the marked probability build up to its
//! peak.
//!
//! Run with: cargo run --release --example single_run

use lqwalk::{
    default_max_steps, evolve, Cell, GridGeometry, MarkedRegion, Result, RunConfig, WeightPreset,
};

fn main() -> Result<()> {
    let geometry = GridGeometry::new(20)?;
    let k = 9;
    let region = MarkedRegion::cluster(geometry, k, Cell::new(0, 0))?;
    let loop_weight = WeightPreset::Proposed.weight(geometry, k)?;
    println!(
        "20x20 torus, 3x3 cluster at (0, 0), loop weight {:.6e}, window {} steps",
        loop_weight,
        default_max_steps(geometry)
    );

    let run = RunConfig::new(geometry, Some(region), loop_weight)?;
    let trace = evolve(&run)?;

    // A coarse view of the series: every 10th step plus a bar.
    println!("\n{:>5} {:>12}", "step", "probability");
    for &(step, probability) in trace.series.iter().filter(|(s, _)| s % 10 == 0) {
        let bar = "#".repeat((probability * 50.0).round() as usize);
        println!("{step:>5} {probability:>12.5} {bar}");
    }

    println!(
        "\npeak probability {:.5} at step {} (initial {:.5}, gain {:.1}x)",
        trace.peak_probability,
        trace.peak_step,
        trace.initial_probability,
        trace.peak_probability / trace.initial_probability
    );
    if trace.peak_on_edge() {
        println!("the peak sits on the window edge; widen max_steps for the true peak");
    }
    Ok(())
}
