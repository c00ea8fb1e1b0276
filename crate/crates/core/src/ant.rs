//! Langton's ant and detection of its highway.
//!
//! Axes: north is `(0, +1)`, east is `(+1, 0)`. A left turn is
//! counterclockwise in that frame.

use std::fmt;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::grid::{CellSet, Coord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntError {
    #[error("unknown heading `{0}` (expected N, E, S or W)")]
    BadHeading(String),
    #[error("{name} must be at least 1")]
    ZeroParameter { name: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    N,
    E,
    S,
    W,
}

impl Heading {
    pub fn delta(self) -> Coord {
        match self {
            Heading::N => (0, 1),
            Heading::E => (1, 0),
            Heading::S => (0, -1),
            Heading::W => (-1, 0),
        }
    }

    pub fn right(self) -> Self {
        match self {
            Heading::N => Heading::E,
            Heading::E => Heading::S,
            Heading::S => Heading::W,
            Heading::W => Heading::N,
        }
    }

    pub fn left(self) -> Self {
        match self {
            Heading::N => Heading::W,
            Heading::W => Heading::S,
            Heading::S => Heading::E,
            Heading::E => Heading::N,
        }
    }

    /// Image under the reflection `x -> -x`.
    pub fn mirrored(self) -> Self {
        match self {
            Heading::E => Heading::W,
            Heading::W => Heading::E,
            h => h,
        }
    }

    fn index(self) -> u8 {
        self as u8
    }
}

impl std::str::FromStr for Heading {
    type Err = AntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "N" => Ok(Heading::N),
            "E" => Ok(Heading::E),
            "S" => Ok(Heading::S),
            "W" => Ok(Heading::W),
            _ => Err(AntError::BadHeading(s.to_string())),
        }
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which way the ant turns on a white cell. The classic ant turns left on
/// white and right on black; the mirrored ant does the opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Chirality {
    #[default]
    LeftOnWhite,
    RightOnWhite,
}

impl Chirality {
    pub fn swapped(self) -> Self {
        match self {
            Chirality::LeftOnWhite => Chirality::RightOnWhite,
            Chirality::RightOnWhite => Chirality::LeftOnWhite,
        }
    }

    fn on_white(self, h: Heading) -> Heading {
        match self {
            Chirality::LeftOnWhite => h.left(),
            Chirality::RightOnWhite => h.right(),
        }
    }

    fn on_black(self, h: Heading) -> Heading {
        match self {
            Chirality::LeftOnWhite => h.right(),
            Chirality::RightOnWhite => h.left(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntState {
    pub pos: Coord,
    pub heading: Heading,
    pub black: CellSet,
    pub steps: u64,
    pub chirality: Chirality,
}

impl AntState {
    /// All-white plane, ant at the origin.
    pub fn new(heading: Heading) -> Self {
        Self {
            pos: (0, 0),
            heading,
            black: CellSet::new(),
            steps: 0,
            chirality: Chirality::LeftOnWhite,
        }
    }

    /// The usual start: white plane, heading north.
    pub fn standard() -> Self {
        Self::new(Heading::N)
    }

    pub fn advance(&mut self) {
        let heading = if self.black.remove(self.pos) {
            self.chirality.on_black(self.heading)
        } else {
            self.black.insert(self.pos);
            self.chirality.on_white(self.heading)
        };
        let (dx, dy) = heading.delta();
        self.heading = heading;
        self.pos = (self.pos.0 + dx, self.pos.1 + dy);
        self.steps += 1;
    }

    /// Undoes one [`advance`](Self::advance).
    pub fn retreat(&mut self) {
        let (dx, dy) = self.heading.delta();
        self.pos = (self.pos.0 - dx, self.pos.1 - dy);
        // The cell was painted black iff the ant found it white.
        self.heading = if self.black.remove(self.pos) {
            self.chirality.on_black(self.heading)
        } else {
            self.black.insert(self.pos);
            self.chirality.on_white(self.heading)
        };
        self.steps -= 1;
    }

    /// Image under `x -> -x`, with the turn convention swapped so that the
    /// mirrored ant traces the mirrored path.
    pub fn mirrored(&self) -> Self {
        Self {
            pos: (-self.pos.0, self.pos.1),
            heading: self.heading.mirrored(),
            black: self.black.map(|(x, y)| (-x, y)),
            steps: self.steps,
            chirality: self.chirality.swapped(),
        }
    }
}

pub fn step(state: &AntState) -> AntState {
    let mut next = state.clone();
    next.advance();
    next
}

pub fn run(state: &AntState, n: u64) -> AntState {
    let mut s = state.clone();
    for _ in 0..n {
        s.advance();
    }
    s
}

/// What the ant sees: its heading and the black cells within Chebyshev
/// distance `radius`, relative to its position, packed row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    heading: u8,
    bits: Vec<u64>,
}

pub fn fingerprint(state: &AntState, radius: u32) -> Fingerprint {
    let r = i64::from(radius);
    let side = (2 * r + 1) as usize;
    let mut bits = vec![0u64; (side * side).div_ceil(64)];
    let (x, y) = state.pos;
    let mut i = 0;
    for dy in -r..=r {
        for dx in -r..=r {
            if state.black.contains((x + dx, y + dy)) {
                bits[i / 64] |= 1 << (i % 64);
            }
            i += 1;
        }
    }
    Fingerprint {
        heading: state.heading.index(),
        bits,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighwayReport {
    pub found: bool,
    pub onset: u64,
    pub period: u64,
    pub displacement: Coord,
    pub window_radius: u32,
    pub confirmations: u32,
    pub max_steps: u64,
}

impl HighwayReport {
    /// Ordered `key=value` pairs.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("found", self.found.to_string()),
            ("onset", self.onset.to_string()),
            ("period", self.period.to_string()),
            ("dx", self.displacement.0.to_string()),
            ("dy", self.displacement.1.to_string()),
            ("window_radius", self.window_radius.to_string()),
            ("confirmations", self.confirmations.to_string()),
            ("max_steps", self.max_steps.to_string()),
        ]
    }
}

impl fmt::Display for HighwayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.fields() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Looks for a translation-periodic regime within `max_steps` steps of
/// `start`.
///
/// Every step's fingerprint is recorded. A fingerprint recurring at
/// `t1 < t2` with the ant displaced proposes period `t2 - t1`, which is kept
/// only if the same fingerprint and proportional displacement show up at the
/// next `confirmations` multiples of the period. The earliest onset wins,
/// then the smallest period for it.
pub fn detect_highway(
    start: &AntState,
    max_steps: u64,
    window_radius: u32,
    confirmations: u32,
) -> Result<HighwayReport, AntError> {
    for (name, v) in [
        ("max_steps", max_steps),
        ("window_radius", u64::from(window_radius)),
        ("confirmations", u64::from(confirmations)),
    ] {
        if v == 0 {
            return Err(AntError::ZeroParameter { name });
        }
    }

    // Intern fingerprints so memory follows the number of distinct views.
    let mut ids: FxHashMap<Fingerprint, u32> = FxHashMap::default();
    let mut seen_at: Vec<Vec<u64>> = Vec::new();
    let mut trace: Vec<u32> = Vec::with_capacity(max_steps as usize + 1);
    let mut positions: Vec<Coord> = Vec::with_capacity(max_steps as usize + 1);

    let mut state = start.clone();
    for t in 0..=max_steps {
        let fp = fingerprint(&state, window_radius);
        let next_id = ids.len() as u32;
        let id = *ids.entry(fp).or_insert(next_id);
        if id == next_id {
            seen_at.push(Vec::new());
        }
        seen_at[id as usize].push(t);
        trace.push(id);
        positions.push(state.pos);
        if t < max_steps {
            state.advance();
        }
    }

    let mut report = HighwayReport {
        found: false,
        onset: 0,
        period: 0,
        displacement: (0, 0),
        window_radius,
        confirmations,
        max_steps,
    };
    let k_max = u64::from(confirmations);
    for t1 in 0..=max_steps {
        let id = trace[t1 as usize];
        let p0 = positions[t1 as usize];
        for &t2 in seen_at[id as usize].iter().filter(|&&t| t > t1) {
            let period = t2 - t1;
            if t1 + (k_max + 1) * period > max_steps {
                break;
            }
            let p2 = positions[t2 as usize];
            let delta = (p2.0 - p0.0, p2.1 - p0.1);
            if delta == (0, 0) {
                continue;
            }
            let confirmed = (2..=k_max + 1).all(|k| {
                let t = (t1 + k * period) as usize;
                let p = positions[t];
                trace[t] == id && p == (p0.0 + k as i64 * delta.0, p0.1 + k as i64 * delta.1)
            });
            if confirmed {
                report.found = true;
                report.onset = t1;
                report.period = period;
                report.displacement = delta;
                return Ok(report);
            }
        }
    }
    Ok(report)
}
