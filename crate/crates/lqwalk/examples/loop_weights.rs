//! How the self-loop weight changes the search on a fixed instance: the
//! four presets side by side on a 16x16 torus with a 3x3 cluster, then a
//! manual scan around the tuned value showing how far off a weight can be
//! before the peak degrades.
//!
//! Run with: cargo run --release --example loop_weights

use lqwalk::{
    evolve_with_interior_peak, Cell, GridGeometry, MarkedRegion, Result, RunConfig, WeightPreset,
    MAX_WIDENINGS,
};

fn peak(geometry: GridGeometry, k: usize, loop_weight: f64) -> Result<(usize, f64)> {
    let region = MarkedRegion::cluster(geometry, k, Cell::new(0, 0))?;
    let run = RunConfig::new(geometry, Some(region), loop_weight)?;
    let (trace, _) = evolve_with_interior_peak(&run, MAX_WIDENINGS)?;
    Ok((trace.peak_step, trace.peak_probability))
}

fn main() -> Result<()> {
    let geometry = GridGeometry::new(16)?;
    let k = 9;

    println!("16x16 torus, 3x3 cluster: presets");
    println!("{:>16} {:>14} {:>10} {:>6}", "preset", "loop weight", "peak", "step");
    for preset in WeightPreset::ALL {
        let loop_weight = preset.weight(geometry, k)?;
        let (step, probability) = peak(geometry, k, loop_weight)?;
        println!(
            "{:>16} {:>14.6e} {:>10.4} {:>6}",
            preset.to_string(),
            loop_weight,
            probability,
            step
        );
    }

    // Scan multiples of the tuned weight. The peak is not knife-edged, but
    // both the loopless limit and heavy loops lose probability.
    let tuned = WeightPreset::Proposed.weight(geometry, k)?;
    println!("\nmanual scan around the tuned weight {tuned:.6e}:");
    println!("{:>10} {:>14} {:>10} {:>6}", "multiple", "loop weight", "peak", "step");
    for multiple in [0.25, 0.5, 1.0, 2.0, 4.0, 16.0] {
        let loop_weight = tuned * multiple;
        let (step, probability) = peak(geometry, k, loop_weight)?;
        println!("{multiple:>10.2} {loop_weight:>14.6e} {probability:>10.4} {step:>6}");
    }
    Ok(())
}
