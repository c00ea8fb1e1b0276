//! Three integer sequences that plausibly admit no shortcut: surviving Life
//! configurations, chained decimal blocks of an irrational number, and
//! counts of words in a decidable language.

mod digits;
mod survival;
mod words;

use thiserror::Error;

pub use digits::{
    digit_chain, digit_chain_blocks, parse_digits, sqrt_digits, ChainBlock, DigitStream,
};
pub use survival::{life_survival_count, ConfigNumbering};
pub use words::{
    enumerate_words, language_count, parse_dfa, Language, LanguageSpec, WordNumbering,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CandidateError {
    #[error("{0} is a perfect square, so its root has no irrational expansion")]
    RationalSqrt(u64),
    #[error("radicand {0} must be at least 2")]
    InvalidRadicand(u64),
    #[error("chain value f({0}) is 0, so the next block would be empty")]
    ChainDegenerate(usize),
    #[error("need {needed} digits but only {available} are available")]
    InsufficientDigits { needed: usize, available: usize },
    #[error("digit {position}: `{found}` is not a decimal digit")]
    BadDigit { position: usize, found: char },
    #[error("word index must be at least 1, got {0}")]
    InvalidIndex(u64),
    #[error("DFA line {line}: {message}")]
    Dfa { line: usize, message: String },
}
