//! Crate-wide error type.

use crate::grid::Cell;

/// Everything that can go wrong when building or running a simulation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Grid sides below 2 leave no room for a walk.
    #[error("grid side must be at least 2, got {side}")]
    SideTooSmall { side: usize },

    /// Dense reference matrices are quadratic in the state dimension and are
    /// capped to tiny grids on purpose.
    #[error("dense reference supports side <= {limit}, got {side}")]
    DenseSideTooLarge { side: usize, limit: usize },

    /// `k` must be a perfect square so the cluster is a square block.
    #[error("marked-cell count must be a perfect square, got {k}")]
    NotPerfectSquare { k: usize },

    /// The cluster rectangle must fit inside the grid without wrapping.
    #[error(
        "cluster of side {cluster_side} anchored at ({x}, {y}) exceeds a grid of side {side}",
        x = anchor.x,
        y = anchor.y
    )]
    ClusterOutOfBounds {
        anchor: Cell,
        cluster_side: usize,
        side: usize,
    },

    /// Cell coordinates outside the grid.
    #[error("cell ({x}, {y}) lies outside a grid of side {side}", x = cell.x, y = cell.y)]
    CellOutOfBounds { cell: Cell, side: usize },

    /// Self-loop weights are probabilities-like quantities; negatives are
    /// rejected at the door.
    #[error("self-loop weight must be nonnegative, got {weight}")]
    NegativeWeight { weight: f64 },

    /// The proposed weight formula is defined for odd perfect-square `k` only.
    #[error("the proposed weight preset requires odd perfect-square k, got {k}")]
    PresetNeedsOddK { k: usize },

    /// Two objects built for different grids were combined.
    #[error("geometry mismatch: expected side {expected}, got {found}")]
    GeometryMismatch { expected: usize, found: usize },

    /// Vector length does not match the dense operator dimension.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The vicinity search must start on a marked cell.
    #[error("vicinity search start ({x}, {y}) is not marked", x = start.x, y = start.y)]
    StartNotMarked { start: Cell },

    /// An operation that needs at least one record received none.
    #[error("no records to process")]
    EmptyRecords,

    /// A preset comparison was asked for a preset absent from the records.
    #[error("records contain no entries for preset '{preset}'")]
    MissingPreset { preset: String },

    /// The peak stayed on the window edge after the configured number of
    /// window doublings; the run never exhibited an interior maximum.
    #[error(
        "peak still at the window edge after widening to {max_steps} steps ({widenings} doublings)"
    )]
    PeakNotInterior { max_steps: usize, widenings: usize },

    /// Monte Carlo and demo entry points need at least one trial.
    #[error("trial count must be at least 1")]
    NoTrials,

    /// Malformed text input (CSV or config files).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// I/O failures, annotated with the path that failed.
    #[error("i/o error on '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Invalid command-line or config-file value.
    #[error("invalid value for {field}: {message}")]
    InvalidValue { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach a path to a raw I/O error.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
