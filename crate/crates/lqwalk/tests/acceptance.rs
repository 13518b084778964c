//! Acceptance gate: the numbered end-to-end claims this simulator is built
//! to meet, each checked at its stated tolerance. Every test prints a
//! one-line verdict (visible with `--nocapture`, and in the failure output
//! when a criterion does not hold).
//!
//! The reference sweep (k = 9, even sides 8..30, all presets) is computed
//! once and shared by the criteria that read it.

use std::sync::OnceLock;

use lqwalk::engine::{evolve_with_interior_peak, RunConfig};
use lqwalk::sweep::{parse_records_csv, records_to_csv, run_sweep, SweepConfig, SweepRecord};
use lqwalk::verify::{max_equivalence_deviation, norm_drift};
use lqwalk::vicinity::{exact_expected_queries, find_corner, monte_carlo_queries};
use lqwalk::{
    stationarity_deviation, Cell, GridGeometry, MarkedRegion, WeightPreset, MAX_WIDENINGS,
};

fn check(number: u32, name: &str, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("criterion {number:02} ({name}): {status} - {detail}");
    assert!(passed, "criterion {number:02} ({name}) failed: {detail}");
}

static SWEEP: OnceLock<Vec<SweepRecord>> = OnceLock::new();

/// The shared reference sweep: k = 9, even sides 8..30, all four presets,
/// cluster anchored at the origin, default window with widening.
fn reference_sweep() -> &'static [SweepRecord] {
    SWEEP.get_or_init(|| {
        let outcome = run_sweep(&SweepConfig::default());
        assert!(
            outcome.failures.is_empty(),
            "reference sweep cells failed: {:?}",
            outcome.failures
        );
        outcome.records
    })
}

fn peak_of(side: usize, preset: WeightPreset) -> &'static SweepRecord {
    reference_sweep()
        .iter()
        .find(|r| r.side == side && r.preset == preset)
        .unwrap_or_else(|| panic!("no sweep record for side {side}, preset {preset}"))
}

#[test]
fn criterion_01_oracle_equivalence() {
    let (cases, deviation) = max_equivalence_deviation().unwrap();
    check(
        1,
        "oracle equivalence",
        deviation <= 1e-12,
        &format!(
            "engine matches the dense reference to {deviation:.3e} max-abs over {cases} cases of 25 steps (bound 1e-12)"
        ),
    );
}

#[test]
fn criterion_02_unitarity_and_stationarity() {
    let geometry = GridGeometry::new(30).unwrap();
    let loop_weight = WeightPreset::Proposed.weight(geometry, 9).unwrap();
    let drift = norm_drift(30, 9, loop_weight, 10_000).unwrap();
    let mut stationarity = 0.0f64;
    for l in [0.0, 0.01] {
        stationarity = stationarity.max(stationarity_deviation(geometry, l, 100).unwrap());
    }
    check(
        2,
        "unitarity and stationarity",
        drift <= 1e-10 && stationarity <= 1e-12,
        &format!(
            "norm drift {drift:.3e} over 10000 steps at side 30 (bound 1e-10); unmarked amplitude drift {stationarity:.3e} over 100 steps for l in {{0, 0.01}} (bound 1e-12)"
        ),
    );
}

#[test]
fn criterion_03_proposed_weight_probability() {
    let mut passed = true;
    let mut details = Vec::new();
    for side in [10usize, 12, 14] {
        let p = peak_of(side, WeightPreset::Proposed).peak_probability;
        let leg = (0.70..=0.92).contains(&p);
        passed &= leg;
        details.push(format!(
            "side {side}: {p:.4} {} [0.70, 0.92]",
            if leg { "in" } else { "OUTSIDE" }
        ));
    }
    for side in (20..=30).step_by(2) {
        let p = peak_of(side, WeightPreset::Proposed).peak_probability;
        let leg = p >= 0.90;
        passed &= leg;
        details.push(format!(
            "side {side}: {p:.4} {} 0.90",
            if leg { ">=" } else { "BELOW" }
        ));
    }
    check(3, "tuned-weight peak probability", passed, &details.join("; "));
}

#[test]
fn criterion_04_improvement_over_loopless() {
    let mut passed = true;
    let mut details = Vec::new();
    for side in (16..=30).step_by(2) {
        let gain = peak_of(side, WeightPreset::Proposed).peak_probability
            - peak_of(side, WeightPreset::Zero).peak_probability;
        let leg = gain >= 0.15;
        passed &= leg;
        details.push(format!(
            "side {side}: {gain:+.4}{}",
            if leg { "" } else { " (< 0.15)" }
        ));
    }
    check(
        4,
        "peak-probability gain over the loopless walk",
        passed,
        &format!("peak(proposed) - peak(zero) per side: {}", details.join(", ")),
    );
}

#[test]
fn criterion_05_fewer_steps_than_loopless() {
    let mut passed = true;
    let mut details = Vec::new();
    for side in (16..=30).step_by(2) {
        let proposed = peak_of(side, WeightPreset::Proposed).peak_step;
        let zero = peak_of(side, WeightPreset::Zero).peak_step;
        let leg = proposed < zero;
        passed &= leg;
        details.push(format!(
            "side {side}: {proposed} vs {zero}{}",
            if leg { "" } else { " (NOT fewer)" }
        ));
    }
    check(
        5,
        "fewer steps to the peak than the loopless walk",
        passed,
        &format!("peak_step(proposed) vs peak_step(zero): {}", details.join(", ")),
    );
}

#[test]
fn criterion_06_quarter_inverse_band() {
    let mut passed = true;
    let mut details = Vec::new();
    for side in (14..=30).step_by(2) {
        let p = peak_of(side, WeightPreset::QuarterInverse).peak_probability;
        let leg = (0.77..=0.93).contains(&p);
        passed &= leg;
        details.push(format!(
            "side {side}: {p:.4}{}",
            if leg { "" } else { " (outside [0.77, 0.93])" }
        ));
    }
    check(
        6,
        "quarter-inverse preset probability band",
        passed,
        &details.join(", "),
    );
}

#[test]
fn criterion_07_single_marked_cell() {
    let geometry = GridGeometry::new(10).unwrap();
    let region = MarkedRegion::cluster(geometry, 1, Cell::new(0, 0)).unwrap();
    let loop_weight = 4.0 / geometry.cell_count() as f64;
    let run = RunConfig::new(geometry, Some(region), loop_weight).unwrap();
    let (trace, _) = evolve_with_interior_peak(&run, MAX_WIDENINGS).unwrap();
    check(
        7,
        "single marked cell with l = 4/N",
        trace.peak_probability >= 0.90,
        &format!(
            "side 10, k = 1: peak probability {:.4} at step {} (required >= 0.90)",
            trace.peak_probability, trace.peak_step
        ),
    );
}

#[test]
fn criterion_08_classical_query_theory() {
    let ks = [1usize, 9, 25, 49];

    // Exact expectation by exhaustive enumeration.
    let mut exact_ok = true;
    let mut exact_values = Vec::new();
    for &k in &ks {
        let exact = exact_expected_queries(k).unwrap();
        let expected = (k as f64).sqrt() + 1.0;
        exact_ok &= (exact - expected).abs() <= 1e-12;
        exact_values.push(exact);
    }

    // Monte Carlo agreement at 1e5 trials.
    let mut mc_ok = true;
    for &k in &ks {
        let (mean, stderr) = monte_carlo_queries(k, 100_000, 17).unwrap();
        let exact = exact_expected_queries(k).unwrap();
        mc_ok &= (mean - exact).abs() <= 3.0 * stderr;
    }

    // Corner recovery from every possible start inside the cluster.
    let mut recovery_ok = true;
    for &k in &ks {
        let cluster_side = (k as f64).sqrt() as usize;
        let geometry = GridGeometry::new(cluster_side + 3).unwrap();
        let anchor = Cell::new(1, 1);
        let region = MarkedRegion::cluster(geometry, k, anchor).unwrap();
        for start in region.cells() {
            let (corner, _) = find_corner(|c| region.contains(c), start, geometry).unwrap();
            recovery_ok &= corner == anchor;
        }
    }

    // Least-squares slope of E[queries] against sqrt(k).
    let xs: Vec<f64> = ks.iter().map(|&k| (k as f64).sqrt()).collect();
    let x_mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let y_mean = exact_values.iter().sum::<f64>() / exact_values.len() as f64;
    let slope = xs
        .iter()
        .zip(&exact_values)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum::<f64>()
        / xs.iter().map(|x| (x - x_mean).powi(2)).sum::<f64>();
    let slope_ok = (slope - 1.0).abs() <= 0.01;

    check(
        8,
        "classical query-count theory",
        exact_ok && mc_ok && recovery_ok && slope_ok,
        &format!(
            "exact E[queries] = sqrt(k) + 1 for k in {{1, 9, 25, 49}}: {exact_ok}; Monte Carlo within 3 sigma at 1e5 trials: {mc_ok}; corner recovered from every start: {recovery_ok}; fit slope {slope:.4} within 1.0 +/- 0.01: {slope_ok}"
        ),
    );
}

#[test]
fn criterion_09_even_k_failure_is_documented() {
    let geometry = GridGeometry::new(16).unwrap();
    let region = MarkedRegion::cluster(geometry, 4, Cell::new(0, 0)).unwrap();
    let run = RunConfig::new(geometry, Some(region), 0.0).unwrap();
    let (trace, _) = evolve_with_interior_peak(&run, MAX_WIDENINGS).unwrap();
    let threshold = 4.0 * trace.initial_probability;
    let below = trace.peak_probability < threshold;
    // Exploratory: the verdict records the observation and does not gate on
    // a band — the run itself succeeding is the requirement.
    check(
        9,
        "even-k failure mode (recorded)",
        true,
        &format!(
            "side 16, k = 4, l = 0: peak probability {:.6} at step {}; stays below 4k/N = {threshold:.6}: {below}",
            trace.peak_probability, trace.peak_step
        ),
    );
}

#[test]
fn criterion_10_determinism_and_format() {
    let config = SweepConfig {
        sides: vec![8, 10],
        k: 9,
        presets: WeightPreset::ALL.to_vec(),
        anchor: Cell::new(0, 0),
        max_steps: None,
        jobs: None,
    };
    let first = run_sweep(&config);
    let second = run_sweep(&config);
    assert!(first.failures.is_empty() && second.failures.is_empty());
    let csv_a = records_to_csv(&first.records);
    let csv_b = records_to_csv(&second.records);
    let identical = csv_a == csv_b;
    let parsed = parse_records_csv(&csv_a).unwrap();
    let round_trip = parsed == first.records && records_to_csv(&parsed) == csv_a;
    check(
        10,
        "determinism and CSV format",
        identical && round_trip,
        &format!("repeated sweeps byte-identical: {identical}; CSV round-trips: {round_trip}"),
    );
}
