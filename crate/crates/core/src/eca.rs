//! Elementary cellular automata: two colors, nearest-neighbor rules, Wolfram
//! numbering.
//!
//! Rows live on an unbounded white background. They are stored bit-packed,
//! 64 cells per word, least significant bit first, and the step kernel
//! produces a whole word of the next generation at a time.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

/// Default cap on the number of rows [`evolve`] keeps.
pub const DEFAULT_ROW_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EcaError {
    #[error("rule number {0} is outside 0..=255")]
    InvalidRule(i64),
    #[error("rule {0} maps the all-white neighborhood to black; use cyclic mode")]
    UnsupportedBackground(u8),
    #[error("history of {requested} rows exceeds the row limit of {limit}")]
    RowLimitExceeded { requested: usize, limit: usize },
    #[error("cyclic width must be at least 1")]
    EmptyCyclicRow,
}

/// A rule table. `outputs[v]` is the next color of the middle cell when the
/// neighborhood `(l, c, r)` reads as `v = 4l + 2c + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleTable {
    number: u8,
    outputs: [bool; 8],
}

impl RuleTable {
    pub fn number(&self) -> u8 {
        self.number
    }

    pub fn outputs(&self) -> [bool; 8] {
        self.outputs
    }

    pub fn output(&self, left: bool, center: bool, right: bool) -> bool {
        self.outputs[(usize::from(left) << 2) | (usize::from(center) << 1) | usize::from(right)]
    }

    /// True when the white background stays white.
    pub fn is_quiescent(&self) -> bool {
        !self.outputs[0]
    }
}

impl fmt::Display for RuleTable {
    /// Prints the table in the usual order, `111` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in (0..8).rev() {
            if v != 7 {
                f.write_str(" ")?;
            }
            write!(f, "{:03b}->{}", v, u8::from(self.outputs[v]))?;
        }
        Ok(())
    }
}

pub fn parse_rule(n: i64) -> Result<RuleTable, EcaError> {
    let number = u8::try_from(n).map_err(|_| EcaError::InvalidRule(n))?;
    let mut outputs = [false; 8];
    for (v, out) in outputs.iter_mut().enumerate() {
        *out = (number >> v) & 1 == 1;
    }
    Ok(RuleTable { number, outputs })
}

/// One generation: a finite stretch of cells starting at `offset`, white
/// everywhere else. Always canonical: the first and last stored cells are
/// black, or nothing is stored at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    offset: i64,
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn empty() -> Self {
        Self {
            offset: 0,
            len: 0,
            words: Vec::new(),
        }
    }

    /// A single black cell at coordinate 0.
    pub fn single() -> Self {
        Self::from_cells([0])
    }

    pub fn from_cells<I: IntoIterator<Item = i64>>(cells: I) -> Self {
        let cells: Vec<i64> = cells.into_iter().collect();
        let (Some(&lo), Some(&hi)) = (cells.iter().min(), cells.iter().max()) else {
            return Self::empty();
        };
        let len = (hi - lo + 1) as usize;
        let mut words = vec![0u64; len.div_ceil(WORD)];
        for &c in &cells {
            let i = (c - lo) as usize;
            words[i / WORD] |= 1 << (i % WORD);
        }
        Self {
            offset: lo,
            len,
            words,
        }
    }

    /// Builds a row from cell colors, `bits[0]` sitting at `offset`.
    pub fn from_bits(offset: i64, bits: &[bool]) -> Self {
        Self::from_cells(
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| offset + i as i64),
        )
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinates `[start, end)` that may hold black cells.
    pub fn span(&self) -> (i64, i64) {
        (self.offset, self.offset + self.len as i64)
    }

    pub fn get(&self, p: i64) -> bool {
        let i = p - self.offset;
        if i < 0 || i >= self.len as i64 {
            return false;
        }
        let i = i as usize;
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn black_cells(&self) -> impl Iterator<Item = i64> + '_ {
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(self.offset + (w * WORD + b) as i64)
            })
        })
    }

    pub fn count_black(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Colors of cells `start..end`.
    pub fn window(&self, start: i64, end: i64) -> Vec<bool> {
        (start..end).map(|p| self.get(p)).collect()
    }

    /// 64 stored bits beginning at stored index `start` (may be negative or
    /// run past the end; missing cells read white).
    fn word_at(&self, start: i64) -> u64 {
        let n = self.words.len() as i64;
        let w = start.div_euclid(WORD as i64);
        let b = start.rem_euclid(WORD as i64) as u32;
        let fetch = |i: i64| {
            if (0..n).contains(&i) {
                self.words[i as usize]
            } else {
                0
            }
        };
        let lo = fetch(w);
        if b == 0 {
            lo
        } else {
            (lo >> b) | (fetch(w + 1) << (WORD as u32 - b))
        }
    }

    /// Trims white cells from both ends of a raw word buffer.
    fn canonical(offset: i64, len: usize, words: Vec<u64>) -> Self {
        let raw = Self { offset, len, words };
        let first = raw
            .words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize);
        let Some(first) = first else {
            return Self::empty();
        };
        let last = raw
            .words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
            .unwrap_or(first);
        let new_len = last - first + 1;
        let nwords = new_len.div_ceil(WORD);
        let mut words: Vec<u64> = if first == 0 {
            let mut w = raw.words;
            w.truncate(nwords);
            w
        } else {
            (0..nwords)
                .map(|i| raw.word_at((first + i * WORD) as i64))
                .collect()
        };
        mask_tail(&mut words, new_len);
        Self {
            offset: offset + first as i64,
            len: new_len,
            words,
        }
    }
}

fn mask_tail(words: &mut [u64], len: usize) {
    let rem = len % WORD;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({}: ", self.offset)?;
        for p in self.offset..self.offset + self.len as i64 {
            f.write_str(if self.get(p) { "#" } else { "." })?;
        }
        f.write_str(")")
    }
}

/// Applies the rule to three aligned words of left, center and right
/// neighbors, one output bit per lane.
#[inline]
fn apply_rule(rule: &RuleTable, left: u64, center: u64, right: u64) -> u64 {
    let mut out = 0;
    for (v, &on) in rule.outputs.iter().enumerate() {
        if on {
            let l = if v & 4 != 0 { left } else { !left };
            let c = if v & 2 != 0 { center } else { !center };
            let r = if v & 1 != 0 { right } else { !right };
            out |= l & c & r;
        }
    }
    out
}

pub fn step_row(rule: &RuleTable, row: &BitRow) -> Result<BitRow, EcaError> {
    if !rule.is_quiescent() {
        return Err(EcaError::UnsupportedBackground(rule.number));
    }
    if row.is_empty() {
        return Ok(BitRow::empty());
    }
    // Output index q covers coordinate offset - 1 + q, whose center is stored
    // index q - 1.
    let len = row.len + 2;
    let nwords = len.div_ceil(WORD);
    let mut words = Vec::with_capacity(nwords);
    for w in 0..nwords {
        let base = (w * WORD) as i64;
        let left = row.word_at(base - 2);
        let center = row.word_at(base - 1);
        let right = row.word_at(base);
        words.push(apply_rule(rule, left, center, right));
    }
    mask_tail(&mut words, len);
    Ok(BitRow::canonical(row.offset - 1, len, words))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcaHistory {
    pub rule: RuleTable,
    pub rows: Vec<BitRow>,
}

impl EcaHistory {
    pub fn generations(&self) -> usize {
        self.rows.len()
    }

    /// Smallest coordinate range holding every black cell of every row, or
    /// `None` if all rows are empty.
    pub fn extent(&self) -> Option<(i64, i64)> {
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(BitRow::span)
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    /// Rows as a bit matrix over coordinates `start..end`.
    pub fn grid(&self, start: i64, end: i64) -> Vec<Vec<bool>> {
        self.rows.iter().map(|r| r.window(start, end)).collect()
    }

    /// One line per generation, `#` for black and `.` for white.
    pub fn to_text(&self, start: i64, end: i64) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.extend((start..end).map(|p| if row.get(p) { '#' } else { '.' }));
            out.push('\n');
        }
        out
    }
}

pub fn evolve(rule: &RuleTable, seed: &BitRow, t: usize) -> Result<EcaHistory, EcaError> {
    evolve_with_limit(rule, seed, t, DEFAULT_ROW_LIMIT)
}

pub fn evolve_with_limit(
    rule: &RuleTable,
    seed: &BitRow,
    t: usize,
    row_limit: usize,
) -> Result<EcaHistory, EcaError> {
    let requested = t.saturating_add(1);
    if requested > row_limit {
        return Err(EcaError::RowLimitExceeded {
            requested,
            limit: row_limit,
        });
    }
    let mut rows = Vec::with_capacity(requested);
    rows.push(seed.clone());
    for _ in 0..t {
        let next = step_row(rule, rows.last().expect("seeded"))?;
        rows.push(next);
    }
    Ok(EcaHistory { rule: *rule, rows })
}

/// Color of cell 0 in generations `0..=t`, starting from a single black cell.
pub fn center_column(rule: &RuleTable, t: usize) -> Result<Vec<bool>, EcaError> {
    let mut row = BitRow::single();
    let mut bits = Vec::with_capacity(t + 1);
    bits.push(row.get(0));
    for _ in 0..t {
        row = step_row(rule, &row)?;
        bits.push(row.get(0));
    }
    Ok(bits)
}

/// A fixed-width ring of cells, bit-packed like [`BitRow`]. Works for every
/// rule, including those that flip the white background.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicRow {
    width: usize,
    words: Vec<u64>,
}

impl CyclicRow {
    pub fn new(cells: &[bool]) -> Result<Self, EcaError> {
        if cells.is_empty() {
            return Err(EcaError::EmptyCyclicRow);
        }
        let mut words = vec![0u64; cells.len().div_ceil(WORD)];
        for (i, _) in cells.iter().enumerate().filter(|(_, &c)| c) {
            words[i / WORD] |= 1 << (i % WORD);
        }
        Ok(Self {
            width: cells.len(),
            words,
        })
    }

    /// A ring of `width` cells with the middle one black.
    pub fn single(width: usize) -> Result<Self, EcaError> {
        let mut cells = vec![false; width];
        if let Some(c) = cells.get_mut(width / 2) {
            *c = true;
        }
        Self::new(&cells)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        let i = i % self.width;
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn cells(&self) -> Vec<bool> {
        (0..self.width).map(|i| self.get(i)).collect()
    }

    /// 64 cells starting at ring index `start`, wrapping around.
    fn word_at(&self, start: i64) -> u64 {
        let w = self.width as i64;
        let s = start.rem_euclid(w);
        if s % WORD as i64 == 0 && s + WORD as i64 <= w {
            return self.words[s as usize / WORD];
        }
        if s + WORD as i64 <= w {
            let (i, b) = (s as usize / WORD, (s % WORD as i64) as u32);
            return (self.words[i] >> b) | (self.words[i + 1] << (WORD as u32 - b));
        }
        (0..WORD as i64).fold(0, |acc, j| {
            acc | (u64::from(self.get(((s + j) % w) as usize)) << j)
        })
    }

    pub fn step(&self, rule: &RuleTable) -> Self {
        let mut words: Vec<u64> = (0..self.words.len())
            .map(|w| {
                let base = (w * WORD) as i64;
                apply_rule(
                    rule,
                    self.word_at(base - 1),
                    self.word_at(base),
                    self.word_at(base + 1),
                )
            })
            .collect();
        mask_tail(&mut words, self.width);
        Self {
            width: self.width,
            words,
        }
    }
}

impl fmt::Debug for CyclicRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CyclicRow(")?;
        for i in 0..self.width {
            f.write_str(if self.get(i) { "#" } else { "." })?;
        }
        f.write_str(")")
    }
}

pub fn evolve_cyclic(rule: &RuleTable, seed: &CyclicRow, t: usize) -> Vec<CyclicRow> {
    let mut rows = Vec::with_capacity(t + 1);
    rows.push(seed.clone());
    for _ in 0..t {
        let next = rows.last().expect("seeded").step(rule);
        rows.push(next);
    }
    rows
}
