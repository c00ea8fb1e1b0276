//! Conway's Game of Life (B3/S23) on the unbounded plane.
//!
//! Coordinates are `(x, y)` with x growing rightward and y growing downward,
//! the same reading order as RLE files.

mod fate;
pub mod patterns;
mod rle;

use rustc_hash::FxHashMap;

pub use crate::grid::{BoundingBox, CellSet, Coord};
pub use fate::{detect_fate, Fate};
pub use rle::{parse_plaintext, parse_rle, write_rle, RleError};

const NEIGHBORS: [Coord; 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// One generation. Only cells adjacent to a live cell can be born, so the
/// tally covers exactly those.
pub fn step(cells: &CellSet) -> CellSet {
    let mut tally: FxHashMap<Coord, u8> = FxHashMap::default();
    tally.reserve(cells.len() * 4);
    for (x, y) in cells.iter() {
        for (dx, dy) in NEIGHBORS {
            *tally.entry((x + dx, y + dy)).or_insert(0) += 1;
        }
    }
    let mut next = CellSet::with_capacity(cells.len() + cells.len() / 4);
    for (c, n) in tally {
        if n == 3 || (n == 2 && cells.contains(c)) {
            next.insert(c);
        }
    }
    next
}

pub fn run(cells: &CellSet, t: usize) -> CellSet {
    let mut cur = cells.clone();
    for _ in 0..t {
        cur = step(&cur);
    }
    cur
}

pub fn population(cells: &CellSet) -> usize {
    cells.len()
}
