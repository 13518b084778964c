//! Marked-cell clusters and self-loop weight presets.
//!
//! The search target is a square block of `k` marked cells (`k` a perfect
//! square) sitting inside the grid without wrapping around the torus edge.
//! The self-loop weight `l` controls how lackadaisical the walk is; the
//! presets collect the values studied for this search problem.

use crate::error::{Error, Result};
use crate::grid::{Cell, GridGeometry};

/// A `sqrt(k) x sqrt(k)` cluster of marked cells.
///
/// The anchor is the cluster's lower-left cell; the marked set is
/// `{(x0 + a, y0 + b) : 0 <= a, b < sqrt(k)}`. Clusters never wrap around
/// the torus edge, which the classical vicinity search relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedRegion {
    anchor: Cell,
    cluster_side: usize,
    geometry: GridGeometry,
}

/// Integer square root if `k` is a perfect square.
pub(crate) fn perfect_sqrt(k: usize) -> Option<usize> {
    let r = (k as f64).sqrt().round() as usize;
    (r * r == k).then_some(r)
}

impl MarkedRegion {
    /// Build the cluster of `k` marked cells anchored at `anchor`.
    ///
    /// `k` must be a perfect square and the block must fit inside the grid
    /// without wrapping.
    pub fn cluster(geometry: GridGeometry, k: usize, anchor: Cell) -> Result<Self> {
        if k == 0 {
            return Err(Error::NotPerfectSquare { k });
        }
        let cluster_side = perfect_sqrt(k).ok_or(Error::NotPerfectSquare { k })?;
        let side = geometry.side();
        if anchor.x + cluster_side > side || anchor.y + cluster_side > side {
            return Err(Error::ClusterOutOfBounds {
                anchor,
                cluster_side,
                side,
            });
        }
        Ok(MarkedRegion {
            anchor,
            cluster_side,
            geometry,
        })
    }

    /// Lower-left cell of the cluster.
    pub fn anchor(&self) -> Cell {
        self.anchor
    }

    /// Edge length of the cluster, `sqrt(k)`.
    pub fn cluster_side(&self) -> usize {
        self.cluster_side
    }

    /// Number of marked cells.
    pub fn k(&self) -> usize {
        self.cluster_side * self.cluster_side
    }

    /// Grid this region was built for.
    pub fn geometry(&self) -> GridGeometry {
        self.geometry
    }

    /// Membership oracle. The cell must lie inside the grid.
    pub fn is_marked(&self, cell: Cell) -> Result<bool> {
        if !self.geometry.contains(cell) {
            return Err(Error::CellOutOfBounds {
                cell,
                side: self.geometry.side(),
            });
        }
        Ok(self.contains(cell))
    }

    /// Membership test without the bounds check; used in inner loops where
    /// the cell provably comes from the same grid.
    pub fn contains(&self, cell: Cell) -> bool {
        cell.x >= self.anchor.x
            && cell.x < self.anchor.x + self.cluster_side
            && cell.y >= self.anchor.y
            && cell.y < self.anchor.y + self.cluster_side
    }

    /// Iterate the marked cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (x0, y0, cs) = (self.anchor.x, self.anchor.y, self.cluster_side);
        (0..cs).flat_map(move |b| (0..cs).map(move |a| Cell::new(x0 + a, y0 + b)))
    }
}

/// Self-loop weight presets.
///
/// * `Zero` — no self-loop; the plain coined search walk.
/// * `WongSingle` — `4/N`, the weight that makes the single-marked-cell
///   lackadaisical search succeed with probability near one.
/// * `QuarterInverse` — `1/(4N)`, a fixed small weight that already performs
///   well for clustered marked cells.
/// * `Proposed` — `4/(N(k + floor(sqrt(k)/2)))`, the cluster-adapted weight;
///   defined for odd perfect-square `k` and coinciding with `WongSingle`
///   at `k = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightPreset {
    Zero,
    WongSingle,
    QuarterInverse,
    Proposed,
}

impl WeightPreset {
    /// All presets, in the order used by sweep outputs.
    pub const ALL: [WeightPreset; 4] = [
        WeightPreset::Zero,
        WeightPreset::WongSingle,
        WeightPreset::QuarterInverse,
        WeightPreset::Proposed,
    ];

    /// Numeric self-loop weight for this preset on an `N`-cell grid with `k`
    /// marked cells.
    pub fn weight(self, geometry: GridGeometry, k: usize) -> Result<f64> {
        let n = geometry.cell_count() as f64;
        match self {
            WeightPreset::Zero => Ok(0.0),
            WeightPreset::WongSingle => Ok(4.0 / n),
            WeightPreset::QuarterInverse => Ok(1.0 / (4.0 * n)),
            WeightPreset::Proposed => {
                let root = perfect_sqrt(k).ok_or(Error::PresetNeedsOddK { k })?;
                if k.is_multiple_of(2) {
                    return Err(Error::PresetNeedsOddK { k });
                }
                Ok(4.0 / (n * (k + root / 2) as f64))
            }
        }
    }
}

impl std::fmt::Display for WeightPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            WeightPreset::Zero => "zero",
            WeightPreset::WongSingle => "wong-single",
            WeightPreset::QuarterInverse => "quarter-inverse",
            WeightPreset::Proposed => "proposed",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for WeightPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(WeightPreset::Zero),
            "wong-single" => Ok(WeightPreset::WongSingle),
            "quarter-inverse" => Ok(WeightPreset::QuarterInverse),
            "proposed" => Ok(WeightPreset::Proposed),
            other => Err(Error::InvalidValue {
                field: "preset".into(),
                message: format!(
                    "unknown preset '{other}' (expected zero, wong-single, quarter-inverse or proposed)"
                ),
            }),
        }
    }
}
