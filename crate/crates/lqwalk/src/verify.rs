//! Cross-validation battery: every fast claim the simulator makes, checked
//! against an independent computation. The flagship check evolves the
//! optimized engine and the dense reference matrix side by side and compares
//! full amplitude vectors.

use num_complex::Complex64;

use crate::dense::{build_step_matrix, dense_evolve, MAX_DENSE_SIDE};
use crate::engine::stationarity_deviation;
use crate::error::Result;
use crate::grid::{Cell, GridGeometry};
use crate::region::{perfect_sqrt, MarkedRegion, WeightPreset};
use crate::state::WalkState;
use crate::sweep::{parse_records_csv, records_to_csv, run_sweep, SweepConfig};
use crate::vicinity::{exact_expected_queries, monte_carlo_queries};
use crate::walk::{apply_flip_flop_shift, walk_step, CoinOperator, StepConfig};

/// One instance of the engine-versus-dense comparison grid.
#[derive(Debug, Clone, Copy)]
pub struct EquivalenceCase {
    pub side: usize,
    /// `None` runs the bare walk with no marked cells.
    pub k: Option<usize>,
    pub loop_weight: f64,
    pub steps: usize,
}

/// The standard comparison grid: small sides, every cluster size that fits,
/// and the loop weights that are defined there (zero, the single-cell
/// weight 4/N, and the cluster-tuned weight where `k` is odd).
pub fn equivalence_cases() -> Vec<EquivalenceCase> {
    let mut cases = Vec::new();
    for side in [2usize, 3, 4] {
        let geometry = GridGeometry::new(side).expect("sides are >= 2");
        let n = geometry.cell_count() as f64;
        for k in [1usize, 4, 9] {
            let cluster_side = perfect_sqrt(k).expect("k values are perfect squares");
            if cluster_side > side {
                continue;
            }
            let mut weights = vec![0.0, 4.0 / n];
            if let Ok(weight) = WeightPreset::Proposed.weight(geometry, k) {
                weights.push(weight);
            }
            for loop_weight in weights {
                cases.push(EquivalenceCase {
                    side,
                    k: Some(k),
                    loop_weight,
                    steps: 25,
                });
            }
        }
        // The unmarked walk, once per side.
        cases.push(EquivalenceCase {
            side,
            k: None,
            loop_weight: 4.0 / n,
            steps: 25,
        });
    }
    cases
}

/// Evolve one case along both routes and return the maximum absolute
/// difference between the two final amplitude vectors.
pub fn equivalence_deviation(case: &EquivalenceCase) -> Result<f64> {
    let geometry = GridGeometry::new(case.side)?;
    let region = match case.k {
        Some(k) => Some(MarkedRegion::cluster(geometry, k, Cell::new(0, 0))?),
        None => None,
    };

    // Route one: the optimized in-place engine.
    let coin = CoinOperator::grover(case.loop_weight)?;
    let step_config = StepConfig::new(geometry, region, case.loop_weight)?;
    let mut state = WalkState::uniform(geometry, case.loop_weight)?;
    for _ in 0..case.steps {
        walk_step(&mut state, &coin, &step_config)?;
    }

    // Route two: the dense matrix, built and applied independently.
    let dense = build_step_matrix(geometry, region.as_ref(), case.loop_weight)?;
    let initial = WalkState::uniform(geometry, case.loop_weight)?;
    let reference = dense_evolve(&dense, initial.amplitudes(), case.steps)?;

    let deviation = state
        .amplitudes()
        .iter()
        .zip(&reference)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    Ok(deviation)
}

/// Run the whole comparison grid; returns `(case count, max deviation)`.
pub fn max_equivalence_deviation() -> Result<(usize, f64)> {
    let cases = equivalence_cases();
    let mut max_dev = 0.0f64;
    for case in &cases {
        max_dev = max_dev.max(equivalence_deviation(case)?);
    }
    Ok((cases.len(), max_dev))
}

/// Evolve an instance for `steps` steps and return the largest deviation of
/// the state norm from 1 seen anywhere along the trajectory.
pub fn norm_drift(side: usize, k: usize, loop_weight: f64, steps: usize) -> Result<f64> {
    let geometry = GridGeometry::new(side)?;
    let region = MarkedRegion::cluster(geometry, k, Cell::new(0, 0))?;
    let coin = CoinOperator::grover(loop_weight)?;
    let step_config = StepConfig::new(geometry, Some(region), loop_weight)?;
    let mut state = WalkState::uniform(geometry, loop_weight)?;
    let mut drift = (state.total_norm() - 1.0).abs();
    for _ in 0..steps {
        walk_step(&mut state, &coin, &step_config)?;
        drift = drift.max((state.total_norm() - 1.0).abs());
    }
    Ok(drift)
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckReport { name, passed, detail }
    }

    fn from_error(name: &'static str, error: &crate::error::Error) -> Self {
        CheckReport::new(name, false, format!("failed to run: {error}"))
    }
}

fn check_dense_unitarity() -> CheckReport {
    const NAME: &str = "dense-unitarity";
    let run = || -> Result<f64> {
        let mut worst = 0.0f64;
        for side in 2..=MAX_DENSE_SIDE.min(4) {
            let geometry = GridGeometry::new(side)?;
            let n = geometry.cell_count() as f64;
            for loop_weight in [0.0, 4.0 / n] {
                for region in [
                    None,
                    Some(MarkedRegion::cluster(geometry, 1, Cell::new(0, 0))?),
                ] {
                    let dense = build_step_matrix(geometry, region.as_ref(), loop_weight)?;
                    worst = worst.max(dense.unitarity_defect());
                }
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(defect) => CheckReport::new(
            NAME,
            defect <= 1e-13,
            format!("max |UU* - I| entry {defect:.3e} (bound 1e-13)"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_engine_matches_dense() -> CheckReport {
    const NAME: &str = "engine-vs-dense";
    match max_equivalence_deviation() {
        Ok((cases, deviation)) => CheckReport::new(
            NAME,
            deviation <= 1e-12,
            format!("max amplitude deviation {deviation:.3e} over {cases} cases after 25 steps (bound 1e-12)"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_norm_conservation() -> CheckReport {
    const NAME: &str = "norm-conservation";
    let run = || -> Result<f64> {
        let geometry = GridGeometry::new(30)?;
        let loop_weight = WeightPreset::Proposed.weight(geometry, 9)?;
        norm_drift(30, 9, loop_weight, 10_000)
    };
    match run() {
        Ok(drift) => CheckReport::new(
            NAME,
            drift <= 1e-10,
            format!("max |norm - 1| over 10000 steps on 30x30: {drift:.3e} (bound 1e-10)"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_stationarity() -> CheckReport {
    const NAME: &str = "unmarked-stationarity";
    let run = || -> Result<f64> {
        let geometry = GridGeometry::new(10)?;
        let mut worst = 0.0f64;
        for loop_weight in [0.0, 0.01] {
            worst = worst.max(stationarity_deviation(geometry, loop_weight, 100)?);
        }
        Ok(worst)
    };
    match run() {
        Ok(deviation) => CheckReport::new(
            NAME,
            deviation <= 1e-12,
            format!("max amplitude drift over 100 unmarked steps {deviation:.3e} (bound 1e-12)"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_shift_involution() -> CheckReport {
    const NAME: &str = "shift-involution";
    let run = || -> Result<bool> {
        let geometry = GridGeometry::new(7)?;
        let mut state = WalkState::uniform(geometry, 0.02)?;
        // Deterministic but unstructured amplitudes.
        for (i, amp) in state.amplitudes_mut().iter_mut().enumerate() {
            *amp = Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.61).cos());
        }
        let before = state.amplitudes().to_vec();
        apply_flip_flop_shift(&mut state);
        apply_flip_flop_shift(&mut state);
        Ok(state.amplitudes() == &before[..])
    };
    match run() {
        Ok(exact) => CheckReport::new(
            NAME,
            exact,
            "applying the shift twice restores the state bit for bit".into(),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_coin_orthogonality() -> CheckReport {
    const NAME: &str = "coin-orthogonality";
    let run = || -> Result<f64> {
        let mut worst = 0.0f64;
        for loop_weight in [0.0, 1e-6, 0.0025, 0.04, 1.0, 4.0] {
            let coin = CoinOperator::grover(loop_weight)?;
            let m = coin.matrix();
            for i in 0..5 {
                for j in 0..5 {
                    let dot: f64 = (0..5).map(|t| m[i][t] * m[j][t]).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((dot - expect).abs());
                }
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(defect) => CheckReport::new(
            NAME,
            defect <= 1e-14,
            format!("max |DD^T - I| entry {defect:.3e} across loop weights (bound 1e-14)"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_initial_state() -> CheckReport {
    const NAME: &str = "initial-state";
    let run = || -> Result<f64> {
        let geometry = GridGeometry::new(12)?;
        let state = WalkState::uniform(geometry, 0.0025)?;
        let n = geometry.cell_count() as f64;
        let dist = state.position_distribution();
        let mut worst = (state.total_norm() - 1.0).abs();
        for cell in geometry.cells() {
            worst = worst.max((dist.probability(cell) - 1.0 / n).abs());
        }
        Ok(worst)
    };
    match run() {
        Ok(defect) => CheckReport::new(
            NAME,
            defect <= 1e-14,
            format!("unit norm and per-cell probability 1/N to {defect:.3e} (bound 1e-14)"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_vicinity_expectation() -> CheckReport {
    const NAME: &str = "vicinity-expectation";
    let run = || -> Result<f64> {
        let mut worst = 0.0f64;
        for k in [1usize, 9, 25, 49] {
            let expected = (k as f64).sqrt() + 1.0;
            worst = worst.max((exact_expected_queries(k)? - expected).abs());
        }
        Ok(worst)
    };
    match run() {
        Ok(defect) => CheckReport::new(
            NAME,
            defect <= 1e-12,
            format!("|E[queries] - (sqrt(k) + 1)| at most {defect:.3e} for k in {{1, 9, 25, 49}}"),
        ),
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_vicinity_monte_carlo() -> CheckReport {
    const NAME: &str = "vicinity-monte-carlo";
    let run = || -> Result<(f64, f64, f64)> {
        let exact = exact_expected_queries(9)?;
        let (mean, stderr) = monte_carlo_queries(9, 100_000, 7)?;
        Ok((exact, mean, stderr))
    };
    match run() {
        Ok((exact, mean, stderr)) => {
            let gap = (mean - exact).abs();
            CheckReport::new(
                NAME,
                gap <= 3.0 * stderr,
                format!(
                    "k=9: sampled {mean:.4} +/- {stderr:.4} vs exact {exact:.4} (|gap| {gap:.4} <= 3 sigma {:.4})",
                    3.0 * stderr
                ),
            )
        }
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

fn check_csv_determinism() -> CheckReport {
    const NAME: &str = "csv-determinism";
    let config = SweepConfig {
        sides: vec![8, 10],
        k: 9,
        presets: vec![WeightPreset::Zero, WeightPreset::Proposed],
        anchor: Cell::new(0, 0),
        max_steps: None,
        jobs: None,
    };
    let first = run_sweep(&config);
    let second = run_sweep(&config);
    if !first.failures.is_empty() || !second.failures.is_empty() {
        return CheckReport::new(NAME, false, "sweep cells failed".into());
    }
    let csv_a = records_to_csv(&first.records);
    let csv_b = records_to_csv(&second.records);
    match parse_records_csv(&csv_a) {
        Ok(parsed) => {
            let identical = csv_a == csv_b;
            let round_trip = parsed == first.records && records_to_csv(&parsed) == csv_a;
            CheckReport::new(
                NAME,
                identical && round_trip,
                format!(
                    "repeated sweeps byte-identical: {identical}; parse-and-rewrite identical: {round_trip}"
                ),
            )
        }
        Err(e) => CheckReport::from_error(NAME, &e),
    }
}

/// Run the full battery in a fixed order.
pub fn run_all_checks() -> Vec<CheckReport> {
    vec![
        check_coin_orthogonality(),
        check_initial_state(),
        check_shift_involution(),
        check_dense_unitarity(),
        check_engine_matches_dense(),
        check_stationarity(),
        check_norm_conservation(),
        check_vicinity_expectation(),
        check_vicinity_monte_carlo(),
        check_csv_determinism(),
    ]
}

/// True when every report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
