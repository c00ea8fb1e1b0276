//! Sparse cell sets on the unbounded integer plane. Used by Life for live
//! cells and by Langton's ant for black cells.

use std::fmt;

use rustc_hash::FxHashSet;

pub type Coord = (i64, i64);

/// Axis-aligned box, both corners inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundingBox {
    pub min_x: i64,
    pub min_y: i64,
    pub max_x: i64,
    pub max_y: i64,
}

impl BoundingBox {
    pub fn width(&self) -> u64 {
        (self.max_x - self.min_x + 1) as u64
    }

    pub fn height(&self) -> u64 {
        (self.max_y - self.min_y + 1) as u64
    }

    pub fn contains(&self, (x, y): Coord) -> bool {
        (self.min_x..=self.max_x).contains(&x) && (self.min_y..=self.max_y).contains(&y)
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        Self {
            min_x: self.min_x + dx,
            min_y: self.min_y + dy,
            max_x: self.max_x + dx,
            max_y: self.max_y + dy,
        }
    }
}

/// A finite set of cells, no duplicates.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CellSet {
    cells: FxHashSet<Coord>,
}

impl CellSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut cells = FxHashSet::default();
        cells.reserve(n);
        Self { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.cells.contains(&c)
    }

    /// Returns true if the cell was not present.
    pub fn insert(&mut self, c: Coord) -> bool {
        self.cells.insert(c)
    }

    /// Returns true if the cell was present.
    pub fn remove(&mut self, c: Coord) -> bool {
        self.cells.remove(&c)
    }

    /// Flips a cell, returning its new state.
    pub fn toggle(&mut self, c: Coord) -> bool {
        if self.cells.remove(&c) {
            false
        } else {
            self.cells.insert(c);
            true
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Coord> + '_ {
        self.cells.iter().copied()
    }

    /// Cells in row-major order (y, then x).
    pub fn sorted(&self) -> Vec<Coord> {
        let mut v: Vec<Coord> = self.iter().collect();
        v.sort_unstable_by_key(|&(x, y)| (y, x));
        v
    }

    pub fn bounding_box(&self) -> Option<BoundingBox> {
        let mut it = self.iter();
        let (x, y) = it.next()?;
        let init = BoundingBox {
            min_x: x,
            min_y: y,
            max_x: x,
            max_y: y,
        };
        Some(it.fold(init, |b, (x, y)| BoundingBox {
            min_x: b.min_x.min(x),
            min_y: b.min_y.min(y),
            max_x: b.max_x.max(x),
            max_y: b.max_y.max(y),
        }))
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        self.map(|(x, y)| (x + dx, y + dy))
    }

    pub fn map(&self, f: impl Fn(Coord) -> Coord) -> Self {
        self.iter().map(f).collect()
    }

    pub fn filter(&self, f: impl Fn(Coord) -> bool) -> Self {
        self.iter().filter(|&c| f(c)).collect()
    }

    /// Translates the set so its bounding box starts at the origin. Returns
    /// the normalized cells (sorted) and the corner that was subtracted.
    pub fn normalized(&self) -> (Vec<Coord>, Coord) {
        let Some(b) = self.bounding_box() else {
            return (Vec::new(), (0, 0));
        };
        let mut v: Vec<Coord> = self
            .iter()
            .map(|(x, y)| (x - b.min_x, y - b.min_y))
            .collect();
        v.sort_unstable_by_key(|&(x, y)| (y, x));
        (v, (b.min_x, b.min_y))
    }
}

impl FromIterator<Coord> for CellSet {
    fn from_iter<I: IntoIterator<Item = Coord>>(iter: I) -> Self {
        Self {
            cells: iter.into_iter().collect(),
        }
    }
}

impl<const N: usize> From<[Coord; N]> for CellSet {
    fn from(cells: [Coord; N]) -> Self {
        cells.into_iter().collect()
    }
}

impl Extend<Coord> for CellSet {
    fn extend<I: IntoIterator<Item = Coord>>(&mut self, iter: I) {
        self.cells.extend(iter)
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted()).finish()
    }
}
