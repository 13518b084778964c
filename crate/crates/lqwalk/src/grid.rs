//! Torus grid geometry and the five-dimensional coin space.
//!
//! The walker lives on a `side x side` grid of cells with periodic boundary
//! conditions. `x` indexes columns and `y` indexes rows, with the origin at
//! the lower-left corner. The coin register holds one of five directions:
//! the four lattice moves plus the self-loop.

use crate::error::{Error, Result};

/// A cell position on the grid: `x` is the column, `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub fn new(x: usize, y: usize) -> Self {
        Cell { x, y }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The coin degree of freedom. The ordinal order is fixed and is part of the
/// state-vector layout, so reordering variants would silently change every
/// exported amplitude dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(usize)]
pub enum CoinDirection {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
    Loop = 4,
}

/// Number of coin directions (four moves plus the self-loop).
pub const COIN_DIM: usize = 5;

impl CoinDirection {
    /// All directions in ordinal order.
    pub const ALL: [CoinDirection; COIN_DIM] = [
        CoinDirection::Up,
        CoinDirection::Down,
        CoinDirection::Left,
        CoinDirection::Right,
        CoinDirection::Loop,
    ];

    /// The fixed ordinal used in the amplitude layout.
    pub fn ordinal(self) -> usize {
        self as usize
    }
}

/// A `side x side` torus grid.
///
/// "Up" decreases `y` by one: the shift convention pairs `(x, y, Up)` with
/// `(x, y-1, Down)`, and all coordinate arithmetic wraps modulo `side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridGeometry {
    side: usize,
}

impl GridGeometry {
    /// Build a grid with `side` cells per axis. Sides below 2 are rejected.
    pub fn new(side: usize) -> Result<Self> {
        if side < 2 {
            return Err(Error::SideTooSmall { side });
        }
        Ok(GridGeometry { side })
    }

    /// Cells per axis.
    pub fn side(&self) -> usize {
        self.side
    }

    /// Total number of cells, `side^2`.
    pub fn cell_count(&self) -> usize {
        self.side * self.side
    }

    /// Dimension of the full state vector: five coin directions per cell.
    pub fn state_dim(&self) -> usize {
        COIN_DIM * self.cell_count()
    }

    /// True if the cell lies inside the grid.
    pub fn contains(&self, cell: Cell) -> bool {
        cell.x < self.side && cell.y < self.side
    }

    /// Flat cell index in the row-major `y * side + x` layout.
    pub fn cell_index(&self, cell: Cell) -> usize {
        debug_assert!(self.contains(cell));
        cell.y * self.side + cell.x
    }

    /// Flat amplitude index. The layout is direction-major, then row, then
    /// column; it is part of the exported snapshot format.
    pub fn amp_index(&self, dir: CoinDirection, cell: Cell) -> usize {
        dir.ordinal() * self.cell_count() + self.cell_index(cell)
    }

    /// Step one cell in `-x` with wrap-around.
    pub fn left_of(&self, cell: Cell) -> Cell {
        Cell::new((cell.x + self.side - 1) % self.side, cell.y)
    }

    /// Step one cell in `+x` with wrap-around.
    pub fn right_of(&self, cell: Cell) -> Cell {
        Cell::new((cell.x + 1) % self.side, cell.y)
    }

    /// Step one cell in `-y` with wrap-around ("below" in grid coordinates).
    pub fn below(&self, cell: Cell) -> Cell {
        Cell::new(cell.x, (cell.y + self.side - 1) % self.side)
    }

    /// Step one cell in `+y` with wrap-around.
    pub fn above(&self, cell: Cell) -> Cell {
        Cell::new(cell.x, (cell.y + 1) % self.side)
    }

    /// Iterate over all cells in row-major order (y outer, x inner).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let side = self.side;
        (0..side).flat_map(move |y| (0..side).map(move |x| Cell::new(x, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_sides() {
        assert!(GridGeometry::new(0).is_err());
        assert!(GridGeometry::new(1).is_err());
        assert!(GridGeometry::new(2).is_ok());
    }

    #[test]
    fn cell_count_is_side_squared() {
        let g = GridGeometry::new(7).unwrap();
        assert_eq!(g.cell_count(), 49);
        assert_eq!(g.state_dim(), 245);
    }

    #[test]
    fn amplitude_layout_is_direction_major() {
        let g = GridGeometry::new(4).unwrap();
        let n = g.cell_count();
        assert_eq!(g.amp_index(CoinDirection::Up, Cell::new(0, 0)), 0);
        assert_eq!(g.amp_index(CoinDirection::Up, Cell::new(1, 0)), 1);
        assert_eq!(g.amp_index(CoinDirection::Up, Cell::new(0, 1)), 4);
        assert_eq!(g.amp_index(CoinDirection::Down, Cell::new(0, 0)), n);
        assert_eq!(g.amp_index(CoinDirection::Loop, Cell::new(3, 3)), 5 * n - 1);
    }

    #[test]
    fn neighbours_wrap_around() {
        let g = GridGeometry::new(4).unwrap();
        assert_eq!(g.left_of(Cell::new(0, 2)), Cell::new(3, 2));
        assert_eq!(g.right_of(Cell::new(3, 2)), Cell::new(0, 2));
        assert_eq!(g.below(Cell::new(1, 0)), Cell::new(1, 3));
        assert_eq!(g.above(Cell::new(1, 3)), Cell::new(1, 0));
    }

    #[test]
    fn cells_iterates_every_cell_once() {
        let g = GridGeometry::new(5).unwrap();
        let all: Vec<Cell> = g.cells().collect();
        assert_eq!(all.len(), 25);
        let mut idx: Vec<usize> = all.iter().map(|&c| g.cell_index(c)).collect();
        idx.dedup();
        assert_eq!(idx, (0..25).collect::<Vec<_>>());
    }

    #[test]
    fn coin_ordinals_are_stable() {
        let ords: Vec<usize> = CoinDirection::ALL.iter().map(|d| d.ordinal()).collect();
        assert_eq!(ords, vec![0, 1, 2, 3, 4]);
    }
}
