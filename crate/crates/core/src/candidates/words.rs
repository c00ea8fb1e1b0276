//! Length-lexicographic numbering of `{0,1}*` and DFA-described languages.
//!
//! With the default numbering `w_1` is the empty word, then `0`, `1`, `00`,
//! ... Word `w_i` is the binary expansion of `i` with its leading `1`
//! removed.

use super::CandidateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WordNumbering {
    /// Start the list at `0` instead of the empty word.
    pub skip_epsilon: bool,
}

impl WordNumbering {
    fn shift(&self) -> u64 {
        u64::from(self.skip_epsilon)
    }

    pub fn word(&self, i: u64) -> Result<String, CandidateError> {
        if i == 0 {
            return Err(CandidateError::InvalidIndex(i));
        }
        let code = i
            .checked_add(self.shift())
            .ok_or(CandidateError::InvalidIndex(i))?;
        Ok(format!("{code:b}")[1..].to_string())
    }

    /// Inverse of [`word`](Self::word). `None` for non-binary input, the
    /// empty word when it is skipped, or words too long to index.
    pub fn index(&self, word: &str) -> Option<u64> {
        if word.len() >= 64 || !word.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        let code = (1u64 << word.len()) | u64::from_str_radix(word, 2).unwrap_or(0);
        code.checked_sub(self.shift()).filter(|&i| i >= 1)
    }
}

pub fn enumerate_words(i: u64) -> Result<String, CandidateError> {
    WordNumbering::default().word(i)
}

/// A decidable set of binary words.
///
/// DFAs are the only implementation shipped here; any total decision
/// procedure can implement this to be counted by [`language_count`].
pub trait Language {
    fn contains(&self, word: &str) -> bool;
}

/// A complete DFA over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSpec {
    start: usize,
    accepting: Vec<bool>,
    transitions: Vec<[usize; 2]>,
}

impl LanguageSpec {
    pub fn new(
        start: usize,
        accepting: Vec<bool>,
        transitions: Vec<[usize; 2]>,
    ) -> Result<Self, CandidateError> {
        let n = transitions.len();
        if n == 0 || accepting.len() != n {
            return Err(CandidateError::Dfa {
                line: 0,
                message: "state tables disagree in size".into(),
            });
        }
        if start >= n || transitions.iter().flatten().any(|&t| t >= n) {
            return Err(CandidateError::Dfa {
                line: 0,
                message: "state id out of range".into(),
            });
        }
        Ok(Self {
            start,
            accepting,
            transitions,
        })
    }

    /// Words with an even number of `1`s.
    pub fn even_ones() -> Self {
        Self {
            start: 0,
            accepting: vec![true, false],
            transitions: vec![[0, 1], [1, 0]],
        }
    }

    /// Every word.
    pub fn everything() -> Self {
        Self {
            start: 0,
            accepting: vec![true],
            transitions: vec![[0, 0]],
        }
    }

    pub fn states(&self) -> usize {
        self.transitions.len()
    }
}

impl Language for LanguageSpec {
    fn contains(&self, word: &str) -> bool {
        let mut s = self.start;
        for b in word.bytes() {
            s = self.transitions[s][usize::from(b == b'1')];
        }
        self.accepting[s]
    }
}

fn dfa_err(line: usize, message: impl Into<String>) -> CandidateError {
    CandidateError::Dfa {
        line,
        message: message.into(),
    }
}

/// Reads the DFA file format:
///
/// ```text
/// states <n>
/// start <id>
/// accept <id> <id> ...
/// trans <id> <0|1> <id>
/// ```
///
/// Every state needs a transition on both symbols.
pub fn parse_dfa(text: &str) -> Result<LanguageSpec, CandidateError> {
    let mut n: Option<usize> = None;
    let mut start: Option<usize> = None;
    let mut accept: Vec<(usize, usize)> = Vec::new();
    let mut trans: Vec<(usize, usize, usize, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some((&key, args)) = tokens.split_first() else {
            continue;
        };
        if key.starts_with('#') {
            continue;
        }
        let nums = args
            .iter()
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| dfa_err(line, format!("`{a}` is not a number")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match (key, nums.as_slice()) {
            ("states", [k]) => n = Some(*k),
            ("start", [s]) => start = Some(*s),
            ("accept", ids) => accept.extend(ids.iter().map(|&id| (id, line))),
            ("trans", [from, sym @ (0 | 1), to]) => trans.push((*from, *sym, *to, line)),
            ("trans", _) => return Err(dfa_err(line, "expected `trans <id> <0|1> <id>`")),
            (other, _) => return Err(dfa_err(line, format!("unexpected `{other}` line"))),
        }
    }

    let n = n
        .filter(|&n| n > 0)
        .ok_or_else(|| dfa_err(0, "missing or zero `states`"))?;
    let start = start.ok_or_else(|| dfa_err(0, "missing `start`"))?;
    if start >= n {
        return Err(dfa_err(0, format!("start state {start} out of range")));
    }
    let mut accepting = vec![false; n];
    for (id, line) in accept {
        *accepting
            .get_mut(id)
            .ok_or_else(|| dfa_err(line, format!("state {id} out of range")))? = true;
    }
    let mut table: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
    for (from, sym, to, line) in trans {
        if from >= n || to >= n {
            return Err(dfa_err(line, "state id out of range"));
        }
        if table[from][sym].replace(to).is_some() {
            return Err(dfa_err(
                line,
                format!("duplicate transition for state {from} on {sym}"),
            ));
        }
    }
    let transitions = table
        .into_iter()
        .enumerate()
        .map(|(s, row)| match row {
            [Some(a), Some(b)] => Ok([a, b]),
            _ => Err(dfa_err(
                0,
                format!("state {s} lacks a transition on 0 or 1"),
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    LanguageSpec::new(start, accepting, transitions)
}

/// How many of `w_1, ..., w_{n-1}` lie in `lang`.
pub fn language_count<L: Language + ?Sized>(
    lang: &L,
    n: u64,
    numbering: WordNumbering,
) -> Result<u64, CandidateError> {
    let mut count = 0;
    for i in 1..n {
        if lang.contains(&numbering.word(i)?) {
            count += 1;
        }
    }
    Ok(count)
}
