//! The walker's state vector and its measurement marginals.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Cell, CoinDirection, GridGeometry, COIN_DIM};
use crate::region::MarkedRegion;

/// Full quantum state of the walker: one complex amplitude per
/// (direction, cell) pair.
///
/// Amplitudes are stored direction-major, then row, then column — index
/// `dir * N + y * side + x` — and that layout is part of the snapshot format,
/// so it must not change. The state is created normalized and no operation in
/// this crate ever renormalizes it: norm drift is a diagnostic signal.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    geometry: GridGeometry,
    loop_weight: f64,
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    /// The uniform starting state of the search walk.
    ///
    /// Every cell carries amplitude `1/sqrt(N(4+l))` on each of the four move
    /// directions and `sqrt(l/(N(4+l)))` on the self-loop. This is the
    /// weighted uniform superposition fixed by the unmarked walk (a +1
    /// eigenstate of the step operator); with `l = 0` the loop amplitudes
    /// vanish and the state is the plain uniform superposition over the four
    /// moves.
    pub fn uniform(geometry: GridGeometry, loop_weight: f64) -> Result<Self> {
        if loop_weight < 0.0 || !loop_weight.is_finite() {
            return Err(Error::NegativeWeight {
                weight: loop_weight,
            });
        }
        let n = geometry.cell_count() as f64;
        let denom = n * (4.0 + loop_weight);
        let move_amp = Complex64::new(1.0 / denom.sqrt(), 0.0);
        let loop_amp = Complex64::new((loop_weight / denom).sqrt(), 0.0);

        // The loop block is the last of the five direction-major blocks.
        let cell_count = geometry.cell_count();
        let mut amplitudes = vec![move_amp; geometry.state_dim()];
        amplitudes[(COIN_DIM - 1) * cell_count..].fill(loop_amp);
        Ok(WalkState {
            geometry,
            loop_weight,
            amplitudes,
        })
    }

    /// Build a state from raw amplitudes in the fixed layout. Intended for
    /// tests and for cross-checking against the dense reference evolution.
    pub fn from_amplitudes(
        geometry: GridGeometry,
        loop_weight: f64,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self> {
        if amplitudes.len() != geometry.state_dim() {
            return Err(Error::DimensionMismatch {
                expected: geometry.state_dim(),
                found: amplitudes.len(),
            });
        }
        Ok(WalkState {
            geometry,
            loop_weight,
            amplitudes,
        })
    }

    pub fn geometry(&self) -> GridGeometry {
        self.geometry
    }

    pub fn loop_weight(&self) -> f64 {
        self.loop_weight
    }

    /// Raw amplitudes in the fixed direction-major layout.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Amplitude at a single (direction, cell) pair.
    pub fn amplitude(&self, dir: CoinDirection, cell: Cell) -> Complex64 {
        self.amplitudes[self.geometry.amp_index(dir, cell)]
    }

    /// Total squared norm of the state. Exactly 1 for a fresh state and,
    /// because every walk operation is unitary, within 1e-10 of 1 after any
    /// number of steps — deviations indicate a bug, not physics.
    pub fn total_norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Total probability of measuring the walker on a marked cell: the sum
    /// over the region's cells of all five coin amplitudes squared.
    pub fn marked_probability(&self, region: &MarkedRegion) -> Result<f64> {
        if region.geometry() != self.geometry {
            return Err(Error::GeometryMismatch {
                expected: self.geometry.side(),
                found: region.geometry().side(),
            });
        }
        let mut total = 0.0;
        for cell in region.cells() {
            for dir in CoinDirection::ALL {
                total += self.amplitude(dir, cell).norm_sqr();
            }
        }
        Ok(total)
    }

    /// Per-cell measurement distribution (coin register summed out).
    pub fn position_distribution(&self) -> CellDistribution {
        let n = self.geometry.cell_count();
        let mut probabilities = vec![0.0; n];
        for dir in 0..COIN_DIM {
            let block = &self.amplitudes[dir * n..(dir + 1) * n];
            for (p, a) in probabilities.iter_mut().zip(block) {
                *p += a.norm_sqr();
            }
        }
        CellDistribution {
            geometry: self.geometry,
            probabilities,
        }
    }
}

/// Probability of finding the walker on each cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellDistribution {
    geometry: GridGeometry,
    probabilities: Vec<f64>,
}

impl CellDistribution {
    pub fn geometry(&self) -> GridGeometry {
        self.geometry
    }

    /// Probabilities in the `y * side + x` cell layout.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Probability of one cell.
    pub fn probability(&self, cell: Cell) -> f64 {
        self.probabilities[self.geometry.cell_index(cell)]
    }

    /// Sum of all entries; equals the state's total norm.
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn grid(side: usize) -> GridGeometry {
        GridGeometry::new(side).unwrap()
    }

    #[test]
    fn weightless_uniform_state_is_quarter_per_direction_on_a_2x2_grid() {
        // N = 4 and l = 0: each move amplitude is 1/sqrt(4N) = 1/4 and all
        // loop amplitudes vanish.
        let state = WalkState::uniform(grid(2), 0.0).unwrap();
        for cell in grid(2).cells() {
            for dir in [
                CoinDirection::Up,
                CoinDirection::Down,
                CoinDirection::Left,
                CoinDirection::Right,
            ] {
                assert_relative_eq!(state.amplitude(dir, cell).re, 0.25);
                assert_eq!(state.amplitude(dir, cell).im, 0.0);
            }
            assert_eq!(state.amplitude(CoinDirection::Loop, cell).re, 0.0);
        }
        assert_relative_eq!(state.total_norm(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn lackadaisical_state_per_cell_probability_is_uniform() {
        // Per cell the five amplitudes square-sum to (4 + l)/(N(4 + l)) = 1/N.
        let state = WalkState::uniform(grid(10), 0.04).unwrap();
        let dist = state.position_distribution();
        for &p in dist.probabilities() {
            assert_abs_diff_eq!(p, 0.01, epsilon = 1e-14);
        }
        assert_relative_eq!(state.total_norm(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn loop_amplitude_matches_the_formula() {
        let l = 4.0 / 16.0;
        let state = WalkState::uniform(grid(4), l).unwrap();
        let expected = (l / (16.0 * (4.0 + l))).sqrt();
        for cell in grid(4).cells() {
            assert_relative_eq!(
                state.amplitude(CoinDirection::Loop, cell).re,
                expected,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn negative_or_non_finite_weights_are_rejected() {
        assert!(WalkState::uniform(grid(4), -0.1).is_err());
        assert!(WalkState::uniform(grid(4), f64::NAN).is_err());
    }

    #[test]
    fn marked_probability_of_uniform_state_is_k_over_n() {
        let g = grid(10);
        let state = WalkState::uniform(g, 0.004).unwrap();
        let region = MarkedRegion::cluster(g, 9, Cell::new(0, 0)).unwrap();
        assert_abs_diff_eq!(
            state.marked_probability(&region).unwrap(),
            0.09,
            epsilon = 1e-14
        );
    }

    #[test]
    fn whole_grid_region_recovers_the_total_norm() {
        let g = grid(3);
        let state = WalkState::uniform(g, 0.5).unwrap();
        let whole = MarkedRegion::cluster(g, 9, Cell::new(0, 0)).unwrap();
        assert_relative_eq!(
            state.marked_probability(&whole).unwrap(),
            state.total_norm(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn marked_probability_rejects_foreign_geometry() {
        let state = WalkState::uniform(grid(4), 0.0).unwrap();
        let region = MarkedRegion::cluster(grid(6), 4, Cell::new(0, 0)).unwrap();
        assert!(state.marked_probability(&region).is_err());
    }

    #[test]
    fn distribution_total_matches_norm() {
        let state = WalkState::uniform(grid(6), 1.25).unwrap();
        assert_relative_eq!(
            state.position_distribution().total(),
            state.total_norm(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn zero_amplitudes_have_zero_norm() {
        let g = grid(3);
        let state =
            WalkState::from_amplitudes(g, 0.0, vec![Complex64::ZERO; g.state_dim()]).unwrap();
        assert_eq!(state.total_norm(), 0.0);
    }

    #[test]
    fn from_amplitudes_checks_the_length() {
        let g = grid(3);
        assert!(WalkState::from_amplitudes(g, 0.0, vec![Complex64::ZERO; 7]).is_err());
    }

    proptest! {
        /// A fresh uniform state is normalized for any grid and weight.
        #[test]
        fn uniform_state_is_normalized(side in 2usize..12, l in 0.0f64..8.0) {
            let state = WalkState::uniform(grid(side), l).unwrap();
            prop_assert!((state.total_norm() - 1.0).abs() < 1e-12);
        }

        /// Every cell of a fresh state carries marginal probability 1/N.
        #[test]
        fn uniform_state_has_uniform_marginal(side in 2usize..10, l in 0.0f64..4.0) {
            let g = grid(side);
            let state = WalkState::uniform(g, l).unwrap();
            let expected = 1.0 / g.cell_count() as f64;
            for &p in state.position_distribution().probabilities() {
                prop_assert!((p - expected).abs() < 1e-14);
            }
        }
    }
}
