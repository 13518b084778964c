//! Lackadaisical quantum walk search on the two-dimensional torus.
//!
//! This crate simulates a discrete-time coined quantum walk that searches a
//! periodic `sqrt(N) x sqrt(N)` grid for a `sqrt(k) x sqrt(k)` cluster of
//! marked cells. Each cell carries a five-dimensional coin — the four grid
//! directions plus a weighted self-loop — and one step of the walk applies
//! a marked-cell phase flip, the Grover diffusion coin, and the flip-flop
//! shift. The headline object of study is the self-loop weight: with the
//! cluster-tuned choice
//!
//! ```text
//! l = 4 / (N * (k + floor(sqrt(k) / 2)))
//! ```
//!
//! the success probability at the peak approaches 1 as the grid grows,
//! where the loopless walk saturates near 0.6 and earlier single-target
//! weights degrade with cluster size. Because the marked cells form a
//! cluster, a measurement at the peak lands in or next to it, and a short
//! classical follow-up — [`vicinity::vicinity_search`] — recovers every
//! marked cell with `sqrt(k) + 1` oracle queries in expectation.
//!
//! # Layout
//!
//! - [`grid`]: torus geometry, cells, coin directions, amplitude indexing.
//! - [`region`]: the marked cluster and the self-loop weight presets.
//! - [`state`]: state vectors, norms, and position distributions.
//! - [`walk`]: one step of the walk — coin, marked-cell flip, shift.
//! - [`engine`]: multi-step evolution, peak tracking, window widening.
//! - [`dense`]: an independent dense-matrix reference for cross-checking.
//! - [`vicinity`]: the classical cluster-recovery search and its costs.
//! - [`sweep`]: experiment harness, CSV tables, the end-to-end demo.
//! - [`plot`]: self-contained SVG summary figures.
//! - [`verify`]: the cross-validation battery behind `lqwalk verify`.
//! - [`config`]: key-value run configuration files for the CLI.
//!
//! # Example
//!
//! Evolve the tuned walk on a 20x20 torus and look at the peak:
//!
//! ```
//! use lqwalk::{Cell, GridGeometry, MarkedRegion, RunConfig, WeightPreset};
//!
//! let geometry = GridGeometry::new(20)?;
//! let region = MarkedRegion::cluster(geometry, 9, Cell::new(0, 0))?;
//! let loop_weight = WeightPreset::Proposed.weight(geometry, 9)?;
//! let run = RunConfig::new(geometry, Some(region), loop_weight)?;
//! let trace = lqwalk::evolve(&run)?;
//! assert!(trace.peak_probability > 0.9);
//! assert!(trace.peak_step < trace.max_steps);
//! # Ok::<(), lqwalk::Error>(())
//! ```

pub mod config;
pub mod dense;
pub mod engine;
pub mod error;
pub mod grid;
pub mod plot;
pub mod region;
pub mod state;
pub mod sweep;
pub mod verify;
pub mod vicinity;
pub mod walk;

pub use engine::{
    default_max_steps, evolve, evolve_with_interior_peak, stationarity_deviation, EvolutionTrace,
    RunConfig,
};
pub use error::{Error, Result};
pub use grid::{Cell, CoinDirection, GridGeometry, COIN_DIM};
pub use plot::{emit_plot, render_svg};
pub use region::{MarkedRegion, WeightPreset};
pub use state::{CellDistribution, WalkState};
pub use sweep::{
    compare_presets, emit_csv, parse_records_csv, read_csv, records_to_csv, run_sweep,
    run_vicinity_demo, trace_to_csv, PresetDelta, SweepConfig, SweepFailure, SweepOutcome,
    SweepRecord, VicinityReport, MAX_WIDENINGS,
};
pub use vicinity::{
    exact_expected_queries, find_corner, monte_carlo_queries, vicinity_search, QueryLog,
};
pub use walk::{apply_coin, apply_flip_flop_shift, walk_step, CoinOperator, StepConfig};
