use std::fmt;

use super::{step, CellSet, Coord};
use crate::analysis::CycleDetector;

/// Outcome of a bounded search for recurrence. Every verdict except
/// `Unknown` is exact: the recurrence was observed, not guessed. `t` is the
/// first generation at which the recurring state appears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fate {
    Extinct {
        t: usize,
    },
    StillLife {
        t: usize,
    },
    Oscillator {
        t: usize,
        period: usize,
    },
    Translator {
        t: usize,
        period: usize,
        dx: i64,
        dy: i64,
    },
    Unknown {
        budget: usize,
    },
}

impl fmt::Display for Fate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Fate::Extinct { t } => write!(f, "extinct({t})"),
            Fate::StillLife { t } => write!(f, "still_life({t})"),
            Fate::Oscillator { t, period } => write!(f, "oscillator({t}, {period})"),
            Fate::Translator { t, period, dx, dy } => {
                write!(f, "translator({t}, {period}, {dx}, {dy})")
            }
            Fate::Unknown { budget } => write!(f, "unknown({budget})"),
        }
    }
}

/// Runs up to `budget` generations looking for an exact repeat of the
/// pattern's shape, with or without displacement.
pub fn detect_fate(cells: &CellSet, budget: usize) -> Fate {
    let mut detector: CycleDetector<Vec<Coord>> = CycleDetector::new();
    let mut corners: Vec<Coord> = Vec::new();
    let mut cur = cells.clone();
    for gen in 0..=budget {
        if cur.is_empty() {
            return Fate::Extinct { t: gen };
        }
        let (shape, corner) = cur.normalized();
        if let Some(first) = detector.push(shape) {
            let period = gen - first;
            let (dx, dy) = (corner.0 - corners[first].0, corner.1 - corners[first].1);
            return if (dx, dy) != (0, 0) {
                Fate::Translator {
                    t: first,
                    period,
                    dx,
                    dy,
                }
            } else if period == 1 {
                Fate::StillLife { t: first }
            } else {
                Fate::Oscillator { t: first, period }
            };
        }
        corners.push(corner);
        if gen < budget {
            cur = step(&cur);
        }
    }
    Fate::Unknown { budget }
}
