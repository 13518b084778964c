//! Sweep orchestration: run many (side, preset) evolutions, tabulate peaks,
//! compare presets, and drive the end-to-end search demo.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{evolve_with_interior_peak, RunConfig};
use crate::error::{Error, Result};
use crate::grid::{Cell, CoinDirection, GridGeometry};
use crate::region::{MarkedRegion, WeightPreset};
use crate::state::WalkState;
use crate::vicinity::{vicinity_search, QueryLog};
use crate::walk::{walk_step, CoinOperator, StepConfig};

/// How many window doublings the harness tries before declaring that a run
/// has no interior peak.
pub const MAX_WIDENINGS: usize = 6;

/// What to sweep: the cross product of `sides` and `presets` at fixed `k`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub sides: Vec<usize>,
    pub k: usize,
    pub presets: Vec<WeightPreset>,
    /// Lower-left corner of the cluster on every grid.
    pub anchor: Cell,
    /// Step window; `None` selects `ceil(2 sqrt(N ln N))` per side. Either
    /// way the harness widens the window until the peak is interior.
    pub max_steps: Option<usize>,
    /// Worker threads for the sweep; `None` uses all available cores.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    /// The reference experiment: `k = 9`, even grid sides 8 through 30, all
    /// four weight presets, cluster anchored at the origin.
    fn default() -> Self {
        SweepConfig {
            sides: (8..=30).step_by(2).collect(),
            k: 9,
            presets: WeightPreset::ALL.to_vec(),
            anchor: Cell::new(0, 0),
            max_steps: None,
            jobs: None,
        }
    }
}

/// Peak data for one (side, preset) cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub side: usize,
    pub n: usize,
    pub k: usize,
    pub preset: WeightPreset,
    pub loop_weight: f64,
    pub peak_step: usize,
    pub peak_probability: f64,
    pub initial_probability: f64,
}

/// A sweep cell that could not run, with the reason.
#[derive(Debug, Clone)]
pub struct SweepFailure {
    pub side: usize,
    pub preset: WeightPreset,
    pub message: String,
}

/// Everything a sweep produced. Failed cells never abort their siblings.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<SweepFailure>,
}

fn run_cell(config: &SweepConfig, side: usize, preset: WeightPreset) -> Result<SweepRecord> {
    let geometry = GridGeometry::new(side)?;
    let region = MarkedRegion::cluster(geometry, config.k, config.anchor)?;
    let loop_weight = preset.weight(geometry, config.k)?;
    let mut run = RunConfig::new(geometry, Some(region), loop_weight)?;
    if let Some(max_steps) = config.max_steps {
        run = run.with_max_steps(max_steps);
    }
    let (trace, _) = evolve_with_interior_peak(&run, MAX_WIDENINGS)?;
    Ok(SweepRecord {
        side,
        n: geometry.cell_count(),
        k: config.k,
        preset,
        loop_weight,
        peak_step: trace.peak_step,
        peak_probability: trace.peak_probability,
        initial_probability: trace.initial_probability,
    })
}

/// Run the whole sweep. Cells are independent and run in parallel; the
/// output order is fixed by the config (sides outer, presets inner)
/// regardless of scheduling, so repeated runs produce identical tables.
pub fn run_sweep(config: &SweepConfig) -> SweepOutcome {
    let cells: Vec<(usize, WeightPreset)> = config
        .sides
        .iter()
        .flat_map(|&side| config.presets.iter().map(move |&preset| (side, preset)))
        .collect();

    let run_all = || -> Vec<std::result::Result<SweepRecord, SweepFailure>> {
        cells
            .par_iter()
            .map(|&(side, preset)| {
                run_cell(config, side, preset).map_err(|e| SweepFailure {
                    side,
                    preset,
                    message: e.to_string(),
                })
            })
            .collect()
    };

    let results = match config.jobs {
        Some(jobs) if jobs > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map(|pool| pool.install(run_all))
            .unwrap_or_else(|_| run_all()),
        _ => run_all(),
    };

    let mut outcome = SweepOutcome {
        records: Vec::new(),
        failures: Vec::new(),
    };
    for result in results {
        match result {
            Ok(record) => outcome.records.push(record),
            Err(failure) => outcome.failures.push(failure),
        }
    }
    outcome
}

/// Per-side differences of one preset against a baseline preset.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetDelta {
    pub side: usize,
    pub preset: WeightPreset,
    pub baseline: WeightPreset,
    /// `peak_probability(preset) - peak_probability(baseline)`.
    pub d_peak_probability: f64,
    /// `peak_step(preset) - peak_step(baseline)`; negative means the preset
    /// peaks earlier.
    pub d_peak_step: i64,
}

/// Compare every preset in `records` against `baseline`, side by side.
/// Sides missing a baseline record are an error.
pub fn compare_presets(records: &[SweepRecord], baseline: WeightPreset) -> Result<Vec<PresetDelta>> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut deltas = Vec::new();
    let mut sides: Vec<usize> = records.iter().map(|r| r.side).collect();
    sides.sort_unstable();
    sides.dedup();
    for side in sides {
        let base = records
            .iter()
            .find(|r| r.side == side && r.preset == baseline)
            .ok_or_else(|| Error::MissingPreset {
                preset: format!("{baseline} at side {side}"),
            })?;
        for record in records.iter().filter(|r| r.side == side) {
            deltas.push(PresetDelta {
                side,
                preset: record.preset,
                baseline,
                d_peak_probability: record.peak_probability - base.peak_probability,
                d_peak_step: record.peak_step as i64 - base.peak_step as i64,
            });
        }
    }
    Ok(deltas)
}

/// Render `f64` with 17 significant digits, enough for exact round-trips.
fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// The per-step series of a single run as CSV
/// (`step,marked_probability`, one row per recorded step).
pub fn trace_to_csv(trace: &crate::engine::EvolutionTrace) -> String {
    let mut out = String::from("step,marked_probability\n");
    for &(step, probability) in &trace.series {
        out.push_str(&format!("{},{}\n", step, format_f64(probability)));
    }
    out
}

/// The sweep table as CSV. The column set and order are stable:
/// `side,N,k,preset,loop_weight,peak_step,peak_probability,initial_probability`.
pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("side,N,k,preset,loop_weight,peak_step,peak_probability,initial_probability\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.side,
            r.n,
            r.k,
            r.preset,
            format_f64(r.loop_weight),
            r.peak_step,
            format_f64(r.peak_probability),
            format_f64(r.initial_probability),
        ));
    }
    out
}

/// Parse a CSV produced by [`records_to_csv`]. Exact inverse of the writer.
pub fn parse_records_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    if header.1.trim() != "side,N,k,preset,loop_weight,peak_step,peak_probability,initial_probability" {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected header '{}'", header.1),
        });
    }

    fn field<'a>(
        parts: &mut std::str::Split<'a, char>,
        line: usize,
        name: &str,
    ) -> Result<&'a str> {
        parts.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing field '{name}'"),
        })
    }

    fn parse<T: std::str::FromStr>(raw: &str, line: usize, name: &str) -> Result<T> {
        raw.trim().parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid {name}: '{raw}'"),
        })
    }

    let mut records = Vec::new();
    for (idx, raw_line) in lines {
        let line = idx + 1;
        if raw_line.trim().is_empty() {
            continue;
        }
        let mut parts = raw_line.split(',');
        let record = SweepRecord {
            side: parse(field(&mut parts, line, "side")?, line, "side")?,
            n: parse(field(&mut parts, line, "N")?, line, "N")?,
            k: parse(field(&mut parts, line, "k")?, line, "k")?,
            preset: field(&mut parts, line, "preset")?
                .trim()
                .parse()
                .map_err(|_| Error::Parse {
                    line,
                    message: "invalid preset name".into(),
                })?,
            loop_weight: parse(field(&mut parts, line, "loop_weight")?, line, "loop_weight")?,
            peak_step: parse(field(&mut parts, line, "peak_step")?, line, "peak_step")?,
            peak_probability: parse(
                field(&mut parts, line, "peak_probability")?,
                line,
                "peak_probability",
            )?,
            initial_probability: parse(
                field(&mut parts, line, "initial_probability")?,
                line,
                "initial_probability",
            )?,
        };
        if parts.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "trailing fields".into(),
            });
        }
        records.push(record);
    }
    Ok(records)
}

/// Write the sweep CSV to a file.
pub fn emit_csv(records: &[SweepRecord], path: &std::path::Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    std::fs::write(path, records_to_csv(records))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

/// Read a sweep CSV back from a file.
pub fn read_csv(path: &std::path::Path) -> Result<Vec<SweepRecord>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_records_csv(&text)
}

/// Result of the end-to-end demo: one quantum evolution, then repeated
/// classical recoveries from cells sampled out of the peak distribution.
#[derive(Debug, Clone)]
pub struct VicinityReport {
    pub side: usize,
    pub k: usize,
    pub preset: WeightPreset,
    pub loop_weight: f64,
    /// Steps the quantum walk ran before measuring (its peak step).
    pub quantum_steps: usize,
    pub peak_probability: f64,
    pub initial_probability: f64,
    /// True when the walk showed no amplification (peak at step 0 or below
    /// the starting probability) — the sampled "found" cell is then
    /// meaningless, as in the even-`k` failure mode.
    pub unreliable: bool,
    /// Whether every trial recovered exactly the true cluster.
    pub recovered_ok: bool,
    pub trials: usize,
    pub mean_queries: f64,
    pub stderr_queries: f64,
    /// Transcript of the first trial, for inspection or CSV export.
    pub first_log: QueryLog,
}

/// Run the full pipeline: evolve to the peak, sample a marked cell from the
/// peak distribution restricted to the cluster, then recover the cluster
/// classically. Repeats the sample-and-recover stage `trials` times
/// (the quantum run happens once) and aggregates the query counts.
///
/// The cluster is anchored at (1, 1): one cell off the grid edge, so the
/// classical cost follows the interior `(l + 1) + (m + 1)` formula exactly.
pub fn run_vicinity_demo(
    side: usize,
    k: usize,
    preset: WeightPreset,
    trials: usize,
    seed: u64,
) -> Result<VicinityReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let geometry = GridGeometry::new(side)?;
    let anchor = Cell::new(1, 1);
    let region = MarkedRegion::cluster(geometry, k, anchor)?;
    let loop_weight = preset.weight(geometry, k)?;

    // One quantum run, widened until the peak is interior.
    let run = RunConfig::new(geometry, Some(region), loop_weight)?;
    let (trace, _) = evolve_with_interior_peak(&run, MAX_WIDENINGS)?;
    let unreliable = trace.peak_step == 0 || trace.peak_probability < trace.initial_probability;

    // Rebuild the state at the peak step to sample from the actual
    // conditional distribution over marked cells (it is near-uniform but we
    // sample it exactly rather than idealizing).
    let coin = CoinOperator::grover(loop_weight)?;
    let step_config = StepConfig::new(geometry, Some(region), loop_weight)?;
    let mut state = WalkState::uniform(geometry, loop_weight)?;
    for _ in 0..trace.peak_step {
        walk_step(&mut state, &coin, &step_config)?;
    }
    let marked_cells: Vec<Cell> = region.cells().collect();
    let weights: Vec<f64> = marked_cells
        .iter()
        .map(|&cell| {
            CoinDirection::ALL
                .iter()
                .map(|&d| state.amplitude(d, cell).norm_sqr())
                .sum()
        })
        .collect();
    let total_weight: f64 = weights.iter().sum();

    let truth = marked_cells.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut recovered_ok = true;
    let mut first_log: Option<QueryLog> = None;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..trials {
        // Inverse-CDF sample from the conditional distribution.
        let draw: f64 = rng.random_range(0.0..total_weight);
        let mut acc = 0.0;
        let mut found = *marked_cells.last().expect("cluster is nonempty");
        for (cell, w) in marked_cells.iter().zip(&weights) {
            acc += w;
            if draw < acc {
                found = *cell;
                break;
            }
        }
        let log = vicinity_search(|c| region.contains(c), found, geometry, k)?;
        recovered_ok &= log.recovered == truth;
        let count = log.query_count as f64;
        sum += count;
        sum_sq += count * count;
        if first_log.is_none() {
            first_log = Some(log);
        }
    }
    let n = trials as f64;
    let mean_queries = sum / n;
    let stderr_queries = if trials > 1 {
        let variance = ((sum_sq - n * mean_queries * mean_queries) / (n - 1.0)).max(0.0);
        (variance / n).sqrt()
    } else {
        0.0
    };

    Ok(VicinityReport {
        side,
        k,
        preset,
        loop_weight,
        quantum_steps: trace.peak_step,
        peak_probability: trace.peak_probability,
        initial_probability: trace.initial_probability,
        unreliable,
        recovered_ok,
        trials,
        mean_queries,
        stderr_queries,
        first_log: first_log.expect("at least one trial ran"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tiny_sweep() -> SweepConfig {
        SweepConfig {
            sides: vec![8, 10],
            k: 9,
            presets: vec![WeightPreset::Zero, WeightPreset::Proposed],
            anchor: Cell::new(0, 0),
            max_steps: None,
            jobs: Some(2),
        }
    }

    #[test]
    fn default_config_mirrors_the_reference_experiment() {
        let config = SweepConfig::default();
        assert_eq!(config.sides, vec![8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30]);
        assert_eq!(config.k, 9);
        assert_eq!(config.presets.len(), 4);
        assert_eq!(config.anchor, Cell::new(0, 0));
    }

    #[test]
    fn sweep_produces_one_record_per_cell_in_order() {
        let outcome = run_sweep(&tiny_sweep());
        assert!(outcome.failures.is_empty());
        let cells: Vec<(usize, WeightPreset)> =
            outcome.records.iter().map(|r| (r.side, r.preset)).collect();
        assert_eq!(
            cells,
            vec![
                (8, WeightPreset::Zero),
                (8, WeightPreset::Proposed),
                (10, WeightPreset::Zero),
                (10, WeightPreset::Proposed),
            ]
        );
        for record in &outcome.records {
            assert_abs_diff_eq!(
                record.initial_probability,
                9.0 / record.n as f64,
                epsilon = 1e-14
            );
            assert!(record.peak_probability > record.initial_probability);
        }
    }

    #[test]
    fn failed_cells_do_not_abort_siblings() {
        // side = 8 cannot host k = 9 anchored at (6, 6); side = 10 can.
        let config = SweepConfig {
            sides: vec![8, 10],
            k: 9,
            presets: vec![WeightPreset::Proposed],
            anchor: Cell::new(6, 6),
            max_steps: None,
            jobs: None,
        };
        let outcome = run_sweep(&config);
        assert_eq!(outcome.failures.len(), 1);
        assert_eq!(outcome.failures[0].side, 8);
        assert_eq!(outcome.records.len(), 1);
        assert_eq!(outcome.records[0].side, 10);
    }

    #[test]
    fn sweep_is_deterministic_across_runs_and_thread_counts() {
        let a = run_sweep(&tiny_sweep());
        let b = run_sweep(&tiny_sweep());
        let mut serial = tiny_sweep();
        serial.jobs = Some(1);
        let c = run_sweep(&serial);
        assert_eq!(records_to_csv(&a.records), records_to_csv(&b.records));
        assert_eq!(records_to_csv(&a.records), records_to_csv(&c.records));
    }

    #[test]
    fn trace_csv_lists_every_recorded_step() {
        let geometry = crate::grid::GridGeometry::new(8).unwrap();
        let region = MarkedRegion::cluster(geometry, 9, Cell::new(0, 0)).unwrap();
        let run = RunConfig::new(geometry, Some(region), 0.0)
            .unwrap()
            .with_max_steps(10)
            .with_record_stride(2);
        let trace = crate::engine::evolve(&run).unwrap();
        let csv = trace_to_csv(&trace);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "step,marked_probability");
        assert_eq!(lines.len(), 1 + trace.series.len());
        assert!(lines[1].starts_with("0,"));
        assert!(lines.last().unwrap().starts_with("10,"));
    }

    #[test]
    fn csv_round_trips_exactly() {
        let outcome = run_sweep(&tiny_sweep());
        let csv = records_to_csv(&outcome.records);
        let parsed = parse_records_csv(&csv).unwrap();
        assert_eq!(parsed, outcome.records);
        // And the re-rendered CSV is byte-identical.
        assert_eq!(records_to_csv(&parsed), csv);
    }

    #[test]
    fn csv_header_and_row_counts() {
        let records = vec![SweepRecord {
            side: 16,
            n: 256,
            k: 9,
            preset: WeightPreset::Proposed,
            loop_weight: 0.0015625,
            peak_step: 68,
            peak_probability: 0.9497,
            initial_probability: 9.0 / 256.0,
        }];
        let csv = records_to_csv(&records);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("side,N,k,preset"));
        assert!(lines[1].starts_with("16,256,9,proposed,"));
    }

    #[test]
    fn malformed_csv_is_rejected_with_line_numbers() {
        assert!(parse_records_csv("").is_err());
        assert!(parse_records_csv("wrong,header\n").is_err());
        let bad_row = "side,N,k,preset,loop_weight,peak_step,peak_probability,initial_probability\n16,256,9,proposed,nope,68,0.9,0.03\n";
        let err = parse_records_csv(bad_row).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn compare_presets_reports_deltas_against_the_baseline() {
        let outcome = run_sweep(&tiny_sweep());
        let deltas = compare_presets(&outcome.records, WeightPreset::Zero).unwrap();
        // Two sides x two presets = four delta rows; the baseline rows are 0.
        assert_eq!(deltas.len(), 4);
        for d in &deltas {
            if d.preset == WeightPreset::Zero {
                assert_eq!(d.d_peak_probability, 0.0);
                assert_eq!(d.d_peak_step, 0);
            } else {
                assert!(d.d_peak_probability > 0.0, "lackadaisical should win");
            }
        }
    }

    #[test]
    fn compare_presets_requires_the_baseline() {
        let outcome = run_sweep(&tiny_sweep());
        let only_proposed: Vec<SweepRecord> = outcome
            .records
            .into_iter()
            .filter(|r| r.preset == WeightPreset::Proposed)
            .collect();
        assert!(matches!(
            compare_presets(&only_proposed, WeightPreset::Zero),
            Err(Error::MissingPreset { .. })
        ));
        assert!(matches!(
            compare_presets(&[], WeightPreset::Zero),
            Err(Error::EmptyRecords)
        ));
    }

    #[test]
    fn vicinity_demo_recovers_the_cluster() {
        let report = run_vicinity_demo(10, 9, WeightPreset::Proposed, 200, 11).unwrap();
        assert!(report.recovered_ok);
        assert!(!report.unreliable);
        assert!(report.peak_probability > 0.5);
        assert!(report.quantum_steps > 0);
        // Worst case is sqrt(k) queries per axis.
        assert!(report.first_log.query_count <= 2 * 3);
        assert!(report.mean_queries >= 2.0 && report.mean_queries <= 6.0);
    }

    #[test]
    fn vicinity_demo_single_marked_cell_costs_two_queries() {
        let report = run_vicinity_demo(10, 1, WeightPreset::WongSingle, 50, 3).unwrap();
        assert!(report.recovered_ok);
        assert_eq!(report.mean_queries, 2.0);
        assert_eq!(report.first_log.query_count, 2);
        assert_eq!(report.first_log.recovered, vec![Cell::new(1, 1)]);
    }

    #[test]
    fn vicinity_demo_is_reproducible_for_a_seed() {
        let a = run_vicinity_demo(10, 9, WeightPreset::Proposed, 100, 5).unwrap();
        let b = run_vicinity_demo(10, 9, WeightPreset::Proposed, 100, 5).unwrap();
        assert_eq!(a.mean_queries, b.mean_queries);
        assert_eq!(a.first_log, b.first_log);
    }

    #[test]
    fn vicinity_demo_handles_the_even_k_failure_mode() {
        // Even k with no self-loop barely amplifies: the peak stays under
        // four times the baseline. It still clears the initial probability,
        // so the no-gain flag stays off, and the classical stage must keep
        // recovering the cluster from whatever cell was sampled.
        let report = run_vicinity_demo(16, 4, WeightPreset::Zero, 10, 1).unwrap();
        assert!(!report.unreliable);
        assert!(report.peak_probability < 4.0 * report.initial_probability);
        assert!(report.recovered_ok);
    }
}
