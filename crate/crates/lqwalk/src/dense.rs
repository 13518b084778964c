//! Brute-force dense-matrix reference for tiny grids.
//!
//! This module rebuilds one walk step as an explicit `5N x 5N` matrix — the
//! literal product of the shift permutation, the block-diagonal diffusion
//! coin, and the diagonal oracle — and evolves states by repeated
//! matrix-vector products. It shares no code with the fast per-cell engine,
//! which makes it a meaningful ground truth: the two implementations can only
//! agree if both realize the same unitary.
//!
//! Everything here is deliberately naive (`O(N^2)` memory, `O(t N^2)` time)
//! and guarded to small sides; it exists for tests, not for production runs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Cell, CoinDirection, GridGeometry};
use crate::region::MarkedRegion;
use crate::walk::CoinOperator;

/// Largest grid side the dense construction accepts (dimension 320).
pub const MAX_DENSE_SIDE: usize = 8;

/// One walk step as an explicit dense matrix.
#[derive(Debug, Clone)]
pub struct DenseStep {
    dim: usize,
    /// Row-major `dim x dim` entries. The construction is real-valued, but
    /// entries are stored as full complex numbers so the reference also
    /// exercises the complex arithmetic path.
    matrix: Vec<Complex64>,
}

impl DenseStep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim + col]
    }

    /// `max |(U U^H - I)_{ij}|` — how far the built matrix is from unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim;
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let mut sum = Complex64::ZERO;
                for t in 0..dim {
                    sum += self.entry(i, t) * self.entry(j, t).conj();
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((sum - expected).norm());
            }
        }
        worst
    }
}

/// Index of `(direction, cell)` in the shared direction-major layout.
fn amp_index(geometry: GridGeometry, dir: CoinDirection, cell: Cell) -> usize {
    geometry.amp_index(dir, cell)
}

/// The flip-flop shift as a basis permutation: `sigma(t)` is where the basis
/// vector `t` is sent. The pairing is an involution.
fn shift_target(geometry: GridGeometry, dir: CoinDirection, cell: Cell) -> usize {
    match dir {
        CoinDirection::Up => amp_index(geometry, CoinDirection::Down, geometry.below(cell)),
        CoinDirection::Down => amp_index(geometry, CoinDirection::Up, geometry.above(cell)),
        CoinDirection::Left => amp_index(geometry, CoinDirection::Right, geometry.left_of(cell)),
        CoinDirection::Right => amp_index(geometry, CoinDirection::Left, geometry.right_of(cell)),
        CoinDirection::Loop => amp_index(geometry, CoinDirection::Loop, cell),
    }
}

/// Build `U = S · (D ⊗ I) · Q` as an explicit matrix product.
///
/// `Q` is the diagonal oracle (sign flip on every amplitude of a marked
/// cell), `D ⊗ I` applies the 5x5 diffusion coin per cell, and `S` is the
/// shift permutation. Pass `None` for an unmarked walk.
pub fn build_step_matrix(
    geometry: GridGeometry,
    region: Option<&MarkedRegion>,
    loop_weight: f64,
) -> Result<DenseStep> {
    if geometry.side() > MAX_DENSE_SIDE {
        return Err(Error::DenseSideTooLarge {
            side: geometry.side(),
            limit: MAX_DENSE_SIDE,
        });
    }
    if let Some(r) = region {
        if r.geometry() != geometry {
            return Err(Error::GeometryMismatch {
                expected: geometry.side(),
                found: r.geometry().side(),
            });
        }
    }
    let dim = geometry.state_dim();
    let coin = CoinOperator::grover(loop_weight)?.matrix();

    // Coin times oracle: block-diagonal per cell, with the whole column
    // negated when the column's cell is marked.
    let mut coin_oracle = vec![Complex64::ZERO; dim * dim];
    for cell in geometry.cells() {
        let sign = match region {
            Some(r) if r.contains(cell) => -1.0,
            _ => 1.0,
        };
        for di in CoinDirection::ALL {
            let row = amp_index(geometry, di, cell);
            for dj in CoinDirection::ALL {
                let col = amp_index(geometry, dj, cell);
                coin_oracle[row * dim + col] =
                    Complex64::new(sign * coin[di.ordinal()][dj.ordinal()], 0.0);
            }
        }
    }

    // Shift permutation matrix: S e_t = e_{sigma(t)}.
    let mut shift = vec![Complex64::ZERO; dim * dim];
    for cell in geometry.cells() {
        for dir in CoinDirection::ALL {
            let t = amp_index(geometry, dir, cell);
            let target = shift_target(geometry, dir, cell);
            shift[target * dim + t] = Complex64::ONE;
        }
    }

    // Literal matrix product U = S * (coin_oracle).
    let mut matrix = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        for t in 0..dim {
            let s = shift[i * dim + t];
            if s == Complex64::ZERO {
                continue;
            }
            for j in 0..dim {
                matrix[i * dim + j] += s * coin_oracle[t * dim + j];
            }
        }
    }

    Ok(DenseStep { dim, matrix })
}

/// Apply the dense step `steps` times: returns `U^steps * initial`.
pub fn dense_evolve(step: &DenseStep, initial: &[Complex64], steps: usize) -> Result<Vec<Complex64>> {
    if initial.len() != step.dim {
        return Err(Error::DimensionMismatch {
            expected: step.dim,
            found: initial.len(),
        });
    }
    let dim = step.dim;
    let mut current = initial.to_vec();
    let mut next = vec![Complex64::ZERO; dim];
    for _ in 0..steps {
        for (i, slot) in next.iter_mut().enumerate() {
            let row = &step.matrix[i * dim..(i + 1) * dim];
            let mut sum = Complex64::ZERO;
            for (m, v) in row.iter().zip(current.iter()) {
                sum += m * v;
            }
            *slot = sum;
        }
        std::mem::swap(&mut current, &mut next);
    }
    Ok(current)
}
