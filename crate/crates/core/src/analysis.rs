//! Cycle detection and simple randomness statistics for bit sequences.

use std::collections::HashMap;
use std::hash::Hash;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("input sequence is empty")]
    EmptyInput,
    #[error("block length {k} exceeds sequence length {len}")]
    BlockTooLarge { k: usize, len: usize },
    #[error("block length must be at least 1")]
    ZeroBlock,
}

/// Preperiod `mu` and period `lambda` of an eventually periodic sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleResult {
    pub found: bool,
    pub mu: usize,
    pub lambda: usize,
}

impl CycleResult {
    pub const NOT_FOUND: Self = Self {
        found: false,
        mu: 0,
        lambda: 0,
    };

    fn at(mu: usize, lambda: usize) -> Self {
        Self {
            found: true,
            mu,
            lambda,
        }
    }
}

/// Incremental first-repeat detector. Feed fingerprints in order; the first
/// one seen before closes the cycle.
#[derive(Debug, Clone)]
pub struct CycleDetector<K> {
    first_seen: HashMap<K, usize>,
    next_index: usize,
}

impl<K: Hash + Eq> Default for CycleDetector<K> {
    fn default() -> Self {
        Self {
            first_seen: HashMap::new(),
            next_index: 0,
        }
    }
}

impl<K: Hash + Eq> CycleDetector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the next fingerprint. Returns the index where it was first
    /// seen if it is a repeat.
    pub fn push(&mut self, key: K) -> Option<usize> {
        let index = self.next_index;
        self.next_index += 1;
        match self.first_seen.entry(key) {
            std::collections::hash_map::Entry::Occupied(e) => Some(*e.get()),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(index);
                None
            }
        }
    }

    pub fn len(&self) -> usize {
        self.next_index
    }

    pub fn is_empty(&self) -> bool {
        self.next_index == 0
    }
}

/// Locates the first repeated state. For a sequence produced by iterating a
/// deterministic map this is the minimal `(mu, lambda)`.
pub fn find_cycle<K: Hash + Eq + Clone>(states: &[K]) -> CycleResult {
    let mut detector = CycleDetector::new();
    for (j, s) in states.iter().enumerate() {
        if let Some(i) = detector.push(s.clone()) {
            return CycleResult::at(i, j - i);
        }
    }
    CycleResult::NOT_FOUND
}

/// Brent's constant-memory search on the orbit of `x0` under `f`. Gives up
/// after `max_steps` evaluations of `f`.
pub fn brent<T, F>(x0: T, f: F, max_steps: usize) -> CycleResult
where
    T: Clone + Eq,
    F: Fn(&T) -> T,
{
    let mut power = 1;
    let mut lambda = 1;
    let mut tortoise = x0.clone();
    let mut hare = f(&x0);
    let mut evals = 1;
    while tortoise != hare {
        if evals >= max_steps {
            return CycleResult::NOT_FOUND;
        }
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = f(&hare);
        lambda += 1;
        evals += 1;
    }

    let mut tortoise = x0.clone();
    let mut hare = x0;
    for _ in 0..lambda {
        hare = f(&hare);
    }
    let mut mu = 0;
    while tortoise != hare {
        tortoise = f(&tortoise);
        hare = f(&hare);
        mu += 1;
    }
    CycleResult::at(mu, lambda)
}

pub fn ones_fraction(bits: &[bool]) -> Result<Ratio<u64>, AnalysisError> {
    if bits.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    let ones = bits.iter().filter(|&&b| b).count() as u64;
    Ok(Ratio::new(ones, bits.len() as u64))
}

/// Shannon entropy, in bits, of the sliding length-`k` windows.
pub fn block_entropy(bits: &[bool], k: usize) -> Result<f64, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::ZeroBlock);
    }
    if k > bits.len() {
        return Err(AnalysisError::BlockTooLarge { k, len: bits.len() });
    }
    let mut counts: HashMap<&[bool], u64> = HashMap::new();
    for w in bits.windows(k) {
        *counts.entry(w).or_default() += 1;
    }
    let total = (bits.len() - k + 1) as f64;
    let h = counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum::<f64>();
    Ok(h.max(0.0))
}

/// True iff no period `p` in `1..=max_period` fits the whole sequence.
pub fn no_short_period(bits: &[bool], max_period: usize) -> bool {
    // A period at least as long as the sequence fits trivially.
    (1..=max_period).all(|p| p < bits.len() && bits.iter().zip(&bits[p..]).any(|(a, b)| a != b))
}
