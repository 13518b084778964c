//! Command-line front end: sweeps, single-run traces, the end-to-end
//! vicinity demo, and the verification battery. All heavy lifting lives in
//! the library; this file only merges flags with an optional key-value
//! configuration file and formats the results.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lqwalk::config::{parse_cell, parse_presets, parse_sides, ConfigFile};
use lqwalk::engine::{evolve, RunConfig};
use lqwalk::plot::emit_plot;
use lqwalk::sweep::{
    emit_csv, records_to_csv, run_sweep, run_vicinity_demo, trace_to_csv, SweepConfig,
};
use lqwalk::verify::{all_passed, run_all_checks};
use lqwalk::{Cell, Error, GridGeometry, MarkedRegion, WeightPreset};

#[derive(Parser)]
#[command(
    name = "lqwalk",
    version,
    about = "Lackadaisical quantum walk search on the 2D torus"
)]
struct Cli {
    /// Key-value configuration file; any flag may be supplied there, and
    /// flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep grid sides and weight presets; emit the peak table as CSV
    /// (stdout unless --out-csv) and optionally a two-panel SVG plot.
    Sweep {
        /// Comma-separated grid sides, e.g. 8,10,12 (default: even 8..30).
        #[arg(long, value_name = "LIST")]
        sides: Option<String>,
        /// Number of marked cells; an odd perfect square for the tuned
        /// preset (default: 9).
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated preset names, or "all" (default: all).
        #[arg(long, value_name = "LIST")]
        presets: Option<String>,
        /// Lower-left corner of the cluster (default: 0,0).
        #[arg(long, value_name = "X,Y")]
        anchor: Option<String>,
        /// Step window; defaults to ceil(2 sqrt(N ln N)) per side.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Write the table to this CSV file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out_csv: Option<PathBuf>,
        /// Also render the summary figure to this SVG file.
        #[arg(long, value_name = "PATH")]
        out_plot: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Evolve a single instance and emit its per-step marked probability
    /// as CSV (stdout unless --out). The window is taken literally — no
    /// widening — so the peak may sit on the window edge.
    Trace {
        /// Grid side (default: 20).
        #[arg(long)]
        side: Option<usize>,
        /// Number of marked cells (default: 9).
        #[arg(long)]
        k: Option<usize>,
        /// Lower-left corner of the cluster (default: 0,0).
        #[arg(long, value_name = "X,Y")]
        anchor: Option<String>,
        /// Weight preset (default: proposed).
        #[arg(long)]
        preset: Option<String>,
        /// Explicit self-loop weight; overrides --preset.
        #[arg(long, value_name = "L")]
        loop_weight: Option<f64>,
        /// Step window; defaults to ceil(2 sqrt(N ln N)).
        #[arg(long)]
        max_steps: Option<usize>,
        /// Record every STRIDE-th step (default: 1).
        #[arg(long, value_name = "STRIDE")]
        stride: Option<usize>,
        /// Write the per-step CSV to this file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the quantum walk to its peak, sample a marked cell, then recover
    /// the full cluster classically; report query statistics over trials.
    Vicinity {
        /// Grid side (default: 20).
        #[arg(long)]
        side: Option<usize>,
        /// Number of marked cells (default: 9).
        #[arg(long)]
        k: Option<usize>,
        /// Weight preset (default: proposed).
        #[arg(long)]
        preset: Option<String>,
        /// Sample-and-recover repetitions (default: 1000).
        #[arg(long)]
        trials: Option<usize>,
        /// PRNG seed (default: 1).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the oracle-equivalence and invariant battery; one PASS/FAIL
    /// line per check, nonzero exit on any failure.
    Verify,
}

/// Command-line value if given, else the configuration file's, else none.
fn merge_raw<'a>(flag: Option<&'a str>, config: &'a ConfigFile, key: &str) -> Option<&'a str> {
    flag.or_else(|| config.get(key))
}

/// Same, for values that parse straight from a string.
fn merge_parsed<T>(flag: Option<T>, config: &ConfigFile, key: &str) -> lqwalk::Result<Option<T>>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    match flag {
        Some(value) => Ok(Some(value)),
        None => config.get_parsed(key),
    }
}

fn merge_preset(
    flag: Option<&str>,
    config: &ConfigFile,
    default: WeightPreset,
) -> lqwalk::Result<WeightPreset> {
    match merge_raw(flag, config, "preset") {
        Some(raw) => raw.parse(),
        None => Ok(default),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_sweep_command(
    config: &ConfigFile,
    sides: Option<String>,
    k: Option<usize>,
    presets: Option<String>,
    anchor: Option<String>,
    max_steps: Option<usize>,
    out_csv: Option<PathBuf>,
    out_plot: Option<PathBuf>,
    jobs: Option<usize>,
) -> lqwalk::Result<ExitCode> {
    let mut sweep_config = SweepConfig::default();
    if let Some(raw) = merge_raw(sides.as_deref(), config, "sides") {
        sweep_config.sides = parse_sides(raw)?;
    }
    if let Some(k) = merge_parsed(k, config, "k")? {
        sweep_config.k = k;
    }
    if let Some(raw) = merge_raw(presets.as_deref(), config, "presets") {
        sweep_config.presets = parse_presets(raw)?;
    }
    if let Some(raw) = merge_raw(anchor.as_deref(), config, "anchor") {
        sweep_config.anchor = parse_cell(raw)?;
    }
    sweep_config.max_steps = merge_parsed(max_steps, config, "max-steps")?;
    sweep_config.jobs = merge_parsed(jobs, config, "jobs")?;
    let out_csv = merge_parsed(out_csv, config, "out-csv")?;
    let out_plot = merge_parsed(out_plot, config, "out-plot")?;

    let outcome = run_sweep(&sweep_config);
    for failure in &outcome.failures {
        eprintln!(
            "error: side {} with preset {}: {}",
            failure.side, failure.preset, failure.message
        );
    }
    if outcome.records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    match &out_csv {
        Some(path) => {
            emit_csv(&outcome.records, path)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", records_to_csv(&outcome.records)),
    }
    if let Some(path) = &out_plot {
        emit_plot(&outcome.records, path)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[allow(clippy::too_many_arguments)]
fn run_trace_command(
    config: &ConfigFile,
    side: Option<usize>,
    k: Option<usize>,
    anchor: Option<String>,
    preset: Option<String>,
    loop_weight: Option<f64>,
    max_steps: Option<usize>,
    stride: Option<usize>,
    out: Option<PathBuf>,
) -> lqwalk::Result<ExitCode> {
    let side = merge_parsed(side, config, "side")?.unwrap_or(20);
    let k = merge_parsed(k, config, "k")?.unwrap_or(9);
    let anchor = match merge_raw(anchor.as_deref(), config, "anchor") {
        Some(raw) => parse_cell(raw)?,
        None => Cell::new(0, 0),
    };
    let preset = merge_preset(preset.as_deref(), config, WeightPreset::Proposed)?;

    let geometry = GridGeometry::new(side)?;
    let region = MarkedRegion::cluster(geometry, k, anchor)?;
    let loop_weight = match merge_parsed(loop_weight, config, "loop-weight")? {
        Some(weight) => weight,
        None => preset.weight(geometry, k)?,
    };

    let mut run = RunConfig::new(geometry, Some(region), loop_weight)?;
    if let Some(max_steps) = merge_parsed(max_steps, config, "max-steps")? {
        run = run.with_max_steps(max_steps);
    }
    if let Some(stride) = merge_parsed(stride, config, "stride")? {
        run = run.with_record_stride(stride);
    }
    let out = merge_parsed(out, config, "out")?;

    let trace = evolve(&run)?;
    let csv = trace_to_csv(&trace);
    match &out {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| Error::io(path.display().to_string(), e))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    eprintln!(
        "side {side}, k {k}, loop weight {loop_weight:.6e}: peak probability {:.6} at step {} (window {}, initial {:.6})",
        trace.peak_probability, trace.peak_step, trace.max_steps, trace.initial_probability
    );
    if trace.peak_on_edge() {
        eprintln!("note: the peak sits on the window edge; rerun with a larger --max-steps");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_vicinity_command(
    config: &ConfigFile,
    side: Option<usize>,
    k: Option<usize>,
    preset: Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
) -> lqwalk::Result<ExitCode> {
    let side = merge_parsed(side, config, "side")?.unwrap_or(20);
    let k = merge_parsed(k, config, "k")?.unwrap_or(9);
    let preset = merge_preset(preset.as_deref(), config, WeightPreset::Proposed)?;
    let trials = merge_parsed(trials, config, "trials")?.unwrap_or(1000);
    let seed = merge_parsed(seed, config, "seed")?.unwrap_or(1);

    let report = run_vicinity_demo(side, k, preset, trials, seed)?;
    println!(
        "instance: side {}, k {}, preset {} (loop weight {:.6e})",
        report.side, report.k, report.preset, report.loop_weight
    );
    println!(
        "quantum stage: {} steps, peak probability {:.6} (initial {:.6})",
        report.quantum_steps, report.peak_probability, report.initial_probability
    );
    if report.unreliable {
        println!("warning: no amplification at the peak; the sampled cell is unreliable");
    }
    println!(
        "classical stage: {} trials, mean queries {:.4} +/- {:.4} (expected sqrt(k)+1 = {:.0})",
        report.trials,
        report.mean_queries,
        report.stderr_queries,
        (report.k as f64).sqrt() + 1.0
    );
    println!(
        "recovered the true cluster in every trial: {}",
        if report.recovered_ok { "yes" } else { "NO" }
    );
    println!("first trial transcript (start {}):", report.first_log.start);
    print!("{}", report.first_log.to_csv());
    Ok(if report.recovered_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_verify_command() -> ExitCode {
    let reports = run_all_checks();
    for report in &reports {
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<22} {}", report.name, report.detail);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    println!("{passed}/{} checks passed", reports.len());
    if all_passed(&reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> lqwalk::Result<ExitCode> {
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Sweep {
            sides,
            k,
            presets,
            anchor,
            max_steps,
            out_csv,
            out_plot,
            jobs,
        } => run_sweep_command(
            &config, sides, k, presets, anchor, max_steps, out_csv, out_plot, jobs,
        ),
        Command::Trace {
            side,
            k,
            anchor,
            preset,
            loop_weight,
            max_steps,
            stride,
            out,
        } => run_trace_command(
            &config,
            side,
            k,
            anchor,
            preset,
            loop_weight,
            max_steps,
            stride,
            out,
        ),
        Command::Vicinity {
            side,
            k,
            preset,
            trials,
            seed,
        } => run_vicinity_command(&config, side, k, preset, trials, seed),
        Command::Verify => Ok(run_verify_command()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_the_configuration_file() {
        let config = ConfigFile::parse("side = 12\ntrials = 99\n").unwrap();
        assert_eq!(
            merge_parsed(Some(16usize), &config, "side").unwrap(),
            Some(16)
        );
        assert_eq!(merge_parsed(None::<usize>, &config, "side").unwrap(), Some(12));
        assert_eq!(merge_parsed(None::<usize>, &config, "absent").unwrap(), None);
        assert_eq!(merge_raw(Some("cli"), &config, "side"), Some("cli"));
        assert_eq!(merge_raw(None, &config, "side"), Some("12"));
    }

    #[test]
    fn preset_merging_defaults_and_parses() {
        let config = ConfigFile::parse("preset = quarter-inverse\n").unwrap();
        assert_eq!(
            merge_preset(None, &config, WeightPreset::Proposed).unwrap(),
            WeightPreset::QuarterInverse
        );
        assert_eq!(
            merge_preset(Some("zero"), &config, WeightPreset::Proposed).unwrap(),
            WeightPreset::Zero
        );
        let empty = ConfigFile::default();
        assert_eq!(
            merge_preset(None, &empty, WeightPreset::Proposed).unwrap(),
            WeightPreset::Proposed
        );
    }

    #[test]
    fn cli_parses_the_documented_surface() {
        let cli = Cli::try_parse_from([
            "lqwalk", "sweep", "--sides", "8,10", "--k", "9", "--presets", "zero,proposed",
            "--anchor", "0,0", "--max-steps", "50", "--out-csv", "a.csv", "--out-plot", "a.svg",
            "--jobs", "2",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Sweep { .. }));

        let cli = Cli::try_parse_from([
            "lqwalk",
            "trace",
            "--side",
            "10",
            "--k",
            "1",
            "--loop-weight",
            "0.04",
            "--stride",
            "2",
        ])
        .unwrap();
        match cli.command {
            Command::Trace { loop_weight, .. } => assert_eq!(loop_weight, Some(0.04)),
            _ => panic!("expected trace"),
        }

        let cli = Cli::try_parse_from([
            "lqwalk", "vicinity", "--side", "20", "--k", "9", "--preset", "proposed", "--trials",
            "100", "--seed", "7",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Vicinity { .. }));

        let cli = Cli::try_parse_from(["lqwalk", "verify", "--config", "run.conf"]).unwrap();
        assert!(matches!(cli.command, Command::Verify));
        assert_eq!(cli.config, Some(PathBuf::from("run.conf")));
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["lqwalk", "sweep", "--bogus", "1"]).is_err());
        assert!(Cli::try_parse_from(["lqwalk", "unknown"]).is_err());
    }
}
