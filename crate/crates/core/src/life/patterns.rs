//! Small named patterns.

use super::CellSet;

/// ```text
/// .O.
/// ..O
/// OOO
/// ```
/// Travels one cell down and right every 4 generations.
pub fn glider() -> CellSet {
    CellSet::from([(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)])
}

/// Vertical phase of the period-2 blinker.
pub fn blinker() -> CellSet {
    CellSet::from([(0, -1), (0, 0), (0, 1)])
}

pub fn block() -> CellSet {
    CellSet::from([(0, 0), (0, 1), (1, 0), (1, 1)])
}
