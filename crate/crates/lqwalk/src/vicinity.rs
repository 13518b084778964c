//! Classical vicinity search: recover the whole cluster from one marked cell.
//!
//! After the quantum walk hands over a single marked cell, the cluster's
//! lower-left corner is found by walking left and then down, querying the
//! membership oracle one neighbouring cell at a time. Each axis costs
//! `offset + 1` queries — the failing query that certifies the boundary is
//! counted — so a start at offset `(l, m)` inside the cluster costs exactly
//! `(l + 1) + (m + 1)` queries, and the expectation over a uniformly random
//! start is `sqrt(k) + 1`: the whole cluster is recovered in `O(sqrt(k))`
//! expected queries.
//!
//! Probes wrap around the torus. Because a cluster never wraps, a probe that
//! crosses the edge normally answers `false` and terminates the axis; the
//! only exception is a cluster spanning the full axis, which the walk detects
//! (a wrapping probe that answers `true`) and resolves to corner coordinate
//! zero without further probing.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridGeometry};
use crate::region::{perfect_sqrt, MarkedRegion};

/// Transcript of one classical vicinity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryLog {
    /// Where the search started (a marked cell).
    pub start: Cell,
    /// Every boundary-finding oracle query, in order, with its answer.
    pub queries: Vec<(Cell, bool)>,
    /// The cluster's lower-left corner as determined by the walk.
    pub corner: Cell,
    /// The full recovered cluster, row-major.
    pub recovered: Vec<Cell>,
    /// Number of boundary-finding queries; always `queries.len()`.
    pub query_count: usize,
}

impl QueryLog {
    /// Render the query transcript as CSV with header `index,x,y,answer`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,x,y,answer\n");
        for (index, (cell, answer)) in self.queries.iter().enumerate() {
            out.push_str(&format!("{index},{},{},{answer}\n", cell.x, cell.y));
        }
        out
    }
}

/// Walk one axis toward decreasing coordinate. `coord` is the start
/// coordinate on that axis; `probe` maps a candidate coordinate to the cell
/// to query. Returns the corner coordinate, appending each query to `log`.
fn walk_axis(
    side: usize,
    coord: usize,
    probe: impl Fn(usize) -> Cell,
    oracle: &impl Fn(Cell) -> bool,
    log: &mut Vec<(Cell, bool)>,
) -> usize {
    let mut pos = coord;
    loop {
        let next = (pos + side - 1) % side;
        let cell = probe(next);
        let answer = oracle(cell);
        log.push((cell, answer));
        if !answer {
            // First unmarked cell: the walker sits on the boundary.
            return pos;
        }
        if pos == 0 {
            // The probe wrapped around the edge and still found a marked
            // cell. Clusters cannot wrap, so the cluster spans this whole
            // axis and its corner coordinate is 0.
            return 0;
        }
        pos = next;
    }
}

/// Find the cluster's lower-left corner from a marked start cell.
///
/// Returns the corner and the ordered query transcript. The start cell is
/// verified against the oracle (an unmarked start is an error) but that
/// verification is not a boundary query and is not counted.
pub fn find_corner(
    oracle: impl Fn(Cell) -> bool,
    start: Cell,
    geometry: GridGeometry,
) -> Result<(Cell, Vec<(Cell, bool)>)> {
    if !geometry.contains(start) {
        return Err(Error::CellOutOfBounds {
            cell: start,
            side: geometry.side(),
        });
    }
    if !oracle(start) {
        return Err(Error::StartNotMarked { start });
    }
    let side = geometry.side();
    let mut log = Vec::new();
    // Left: probe cells (x', start.y) for decreasing x'.
    let corner_x = walk_axis(side, start.x, |x| Cell::new(x, start.y), &oracle, &mut log);
    // Down: the walker now sits on the boundary column; probe downwards from
    // there so every query stays adjacent to the walker's position.
    let corner_y = walk_axis(side, start.y, |y| Cell::new(corner_x, y), &oracle, &mut log);
    Ok((Cell::new(corner_x, corner_y), log))
}

/// All `k` cells of the square cluster anchored at `corner`, row-major.
pub fn enumerate_cluster(corner: Cell, k: usize) -> Result<Vec<Cell>> {
    let cluster_side = perfect_sqrt(k).ok_or(Error::NotPerfectSquare { k })?;
    if k == 0 {
        return Err(Error::NotPerfectSquare { k });
    }
    let mut cells = Vec::with_capacity(k);
    for b in 0..cluster_side {
        for a in 0..cluster_side {
            cells.push(Cell::new(corner.x + a, corner.y + b));
        }
    }
    Ok(cells)
}

/// Full classical search: corner finding plus cluster enumeration, bundled
/// into one transcript.
pub fn vicinity_search(
    oracle: impl Fn(Cell) -> bool,
    start: Cell,
    geometry: GridGeometry,
    k: usize,
) -> Result<QueryLog> {
    let (corner, queries) = find_corner(oracle, start, geometry)?;
    let recovered = enumerate_cluster(corner, k)?;
    let query_count = queries.len();
    Ok(QueryLog {
        start,
        queries,
        corner,
        recovered,
        query_count,
    })
}

/// A synthetic interior instance for cost accounting: a `sqrt(k) x sqrt(k)`
/// cluster anchored at (1, 1), one cell away from the grid edge so no walk
/// ever touches the wrap-around.
fn reference_instance(k: usize) -> Result<(GridGeometry, MarkedRegion)> {
    let cluster_side = perfect_sqrt(k).ok_or(Error::NotPerfectSquare { k })?;
    let geometry = GridGeometry::new(cluster_side + 3)?;
    let region = MarkedRegion::cluster(geometry, k, Cell::new(1, 1))?;
    Ok((geometry, region))
}

/// Exact expected number of boundary queries over all `k` equally likely
/// start cells, computed by running the search from every start and
/// averaging — no closed-form shortcut. The result equals `sqrt(k) + 1`.
pub fn exact_expected_queries(k: usize) -> Result<f64> {
    let (geometry, region) = reference_instance(k)?;
    let mut total = 0usize;
    for start in region.cells() {
        let (corner, queries) = find_corner(|c| region.contains(c), start, geometry)?;
        debug_assert_eq!(corner, region.anchor());
        total += queries.len();
    }
    Ok(total as f64 / k as f64)
}

/// Monte-Carlo estimate of the expected boundary-query count for uniformly
/// random starts: returns `(mean, standard error)`.
///
/// Sampling is reproducible for a fixed seed regardless of how many worker
/// threads run the trials: trials are split into fixed batches and each batch
/// draws from its own deterministic stream of the seeded generator.
pub fn monte_carlo_queries(k: usize, trials: usize, seed: u64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let (geometry, region) = reference_instance(k)?;
    let cluster_side = region.cluster_side();
    let anchor = region.anchor();

    const BATCH: usize = 4096;
    let batches = trials.div_ceil(BATCH);
    let sums: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64 + 1);
            let in_batch = BATCH.min(trials - batch * BATCH);
            let mut sum = 0.0f64;
            let mut sum_sq = 0.0f64;
            for _ in 0..in_batch {
                let l = rng.random_range(0..cluster_side);
                let m = rng.random_range(0..cluster_side);
                let start = Cell::new(anchor.x + l, anchor.y + m);
                let (_, queries) = find_corner(|c| region.contains(c), start, geometry)
                    .expect("start cell is inside the cluster by construction");
                let count = queries.len() as f64;
                sum += count;
                sum_sq += count * count;
            }
            (sum, sum_sq)
        })
        .collect();

    // Sequential reduction in batch order keeps the result bit-identical
    // across thread schedules.
    let (sum, sum_sq) = sums
        .iter()
        .fold((0.0, 0.0), |(a, b), &(s, q)| (a + s, b + q));
    let n = trials as f64;
    let mean = sum / n;
    let stderr = if trials > 1 {
        let variance = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (variance / n).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}
