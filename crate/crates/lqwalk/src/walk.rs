//! The coin and shift unitaries making up one step of the walk.
//!
//! One step is `U = S · (D ⊗ I) · Q`:
//!
//! 1. `Q` — the search oracle, a phase flip of every amplitude on a marked
//!    cell;
//! 2. `D ⊗ I` — the weighted Grover diffusion acting on the coin register of
//!    every cell;
//! 3. `S` — the flip-flop shift, which moves amplitude along the coin
//!    direction and inverts the direction, leaving self-loop amplitude in
//!    place.
//!
//! Because `Q` is a scalar sign per cell, steps 1 and 2 combine into a single
//! per-cell pass: unmarked cells get `D`, marked cells get `-D`. That is what
//! [`apply_coin`] implements.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridGeometry, COIN_DIM};
use crate::region::MarkedRegion;
use crate::state::WalkState;

/// The weighted Grover diffusion coin `D = 2|s><s| - I` on the five
/// dimensional coin space, where `|s> = (1, 1, 1, 1, sqrt(l)) / sqrt(4 + l)`.
///
/// `D` is real, symmetric and orthogonal, and fixes its axis `|s>`; every
/// vector orthogonal to `|s>` is negated.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinOperator {
    loop_weight: f64,
    axis: [f64; COIN_DIM],
}

impl CoinOperator {
    /// Build the diffusion coin for self-loop weight `l >= 0`.
    pub fn grover(loop_weight: f64) -> Result<Self> {
        if loop_weight < 0.0 || !loop_weight.is_finite() {
            return Err(Error::NegativeWeight {
                weight: loop_weight,
            });
        }
        let norm = (4.0 + loop_weight).sqrt();
        let w = 1.0 / norm;
        let axis = [w, w, w, w, loop_weight.sqrt() / norm];
        Ok(CoinOperator { loop_weight, axis })
    }

    pub fn loop_weight(&self) -> f64 {
        self.loop_weight
    }

    /// The reflection axis `|s>` as a unit vector.
    pub fn axis(&self) -> [f64; COIN_DIM] {
        self.axis
    }

    /// The full 5x5 matrix, entry `(i, j) = 2 w_i w_j - delta_ij`.
    pub fn matrix(&self) -> [[f64; COIN_DIM]; COIN_DIM] {
        let mut m = [[0.0; COIN_DIM]; COIN_DIM];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = 2.0 * self.axis[i] * self.axis[j] - if i == j { 1.0 } else { 0.0 };
            }
        }
        m
    }

    /// Apply `D` to one coin vector in place via the reflection form
    /// `v -> 2 (w·v) w - v`, which is exactly the matrix action but cheaper.
    #[inline]
    pub fn reflect(&self, v: &mut [Complex64; COIN_DIM]) {
        let mut dot = Complex64::ZERO;
        for (&w, &amp) in self.axis.iter().zip(v.iter()) {
            dot += w * amp;
        }
        let twice = 2.0 * dot;
        for (&w, amp) in self.axis.iter().zip(v.iter_mut()) {
            *amp = w * twice - *amp;
        }
    }
}

/// Parameters of one walk step: which grid, which cells are marked (if any),
/// and the self-loop weight.
#[derive(Debug, Clone)]
pub struct StepConfig {
    pub geometry: GridGeometry,
    /// `None` runs the unmarked walk, for which the uniform state is
    /// stationary.
    pub region: Option<MarkedRegion>,
    pub loop_weight: f64,
}

impl StepConfig {
    pub fn new(
        geometry: GridGeometry,
        region: Option<MarkedRegion>,
        loop_weight: f64,
    ) -> Result<Self> {
        if let Some(r) = &region {
            if r.geometry() != geometry {
                return Err(Error::GeometryMismatch {
                    expected: geometry.side(),
                    found: r.geometry().side(),
                });
            }
        }
        if loop_weight < 0.0 || !loop_weight.is_finite() {
            return Err(Error::NegativeWeight {
                weight: loop_weight,
            });
        }
        Ok(StepConfig {
            geometry,
            region,
            loop_weight,
        })
    }
}

/// Apply the oracle-and-diffusion pass: every cell's coin vector is
/// multiplied by `D`; on marked cells the result is negated (the oracle's
/// phase flip composed with the diffusion).
pub fn apply_coin(state: &mut WalkState, coin: &CoinOperator, config: &StepConfig) -> Result<()> {
    if state.geometry() != config.geometry {
        return Err(Error::GeometryMismatch {
            expected: config.geometry.side(),
            found: state.geometry().side(),
        });
    }
    let n = config.geometry.cell_count();
    let amps = state.amplitudes_mut();
    for cell_idx in 0..n {
        let mut v = [Complex64::ZERO; COIN_DIM];
        for (d, slot) in v.iter_mut().enumerate() {
            *slot = amps[d * n + cell_idx];
        }
        coin.reflect(&mut v);
        for (d, &value) in v.iter().enumerate() {
            amps[d * n + cell_idx] = value;
        }
    }
    if let Some(region) = &config.region {
        for cell in region.cells() {
            let idx = config.geometry.cell_index(cell);
            for d in 0..COIN_DIM {
                amps[d * n + idx] = -amps[d * n + idx];
            }
        }
    }
    Ok(())
}

/// The flip-flop shift `S`.
///
/// Amplitude on `(Up, x, y)` swaps with `(Down, x, y-1 mod side)`, amplitude
/// on `(Left, x, y)` swaps with `(Right, x-1 mod side, y)`, and self-loop
/// amplitude stays put. `S` is a pure permutation and an involution.
pub fn apply_flip_flop_shift(state: &mut WalkState) {
    let geometry = state.geometry();
    let side = geometry.side();
    let n = geometry.cell_count();
    let amps = state.amplitudes_mut();
    // Each unordered pair is visited exactly once because the pairing maps
    // the Up (resp. Left) block bijectively onto the Down (resp. Right) block.
    for y in 0..side {
        let y_below = (y + side - 1) % side;
        for x in 0..side {
            let up = y * side + x; // block 0: Up
            let down = n + y_below * side + x; // block 1: Down
            amps.swap(up, down);
        }
    }
    for y in 0..side {
        for x in 0..side {
            let x_left = (x + side - 1) % side;
            let left = 2 * n + y * side + x; // block 2: Left
            let right = 3 * n + y * side + x_left; // block 3: Right
            amps.swap(left, right);
        }
    }
}

/// One full step `U = S · (D ⊗ I) · Q` applied in place.
pub fn walk_step(state: &mut WalkState, coin: &CoinOperator, config: &StepConfig) -> Result<()> {
    apply_coin(state, coin, config)?;
    apply_flip_flop_shift(state);
    Ok(())
}
