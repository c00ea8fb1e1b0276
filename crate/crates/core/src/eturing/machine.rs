//! Machine descriptions and the line-oriented text format they are read
//! from.
//!
//! ```text
//! name <id>
//! tapes <k>
//! start <state>
//! halt <state>
//! <state> <s1>..<sk> -> <state'> <w1>..<wk> <m1>..<mk> <out>
//! ```
//!
//! Symbols are `0`, `1` and `#`; moves are `L`, `R`, `S`; the output action
//! is `-` (none) or a symbol to append to the output tape. A line starting
//! with `# ` is a comment.

use std::fmt;

use rustc_hash::FxHashMap;

use super::MachineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Symbol {
    #[default]
    Zero,
    One,
    Hash,
}

impl Symbol {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '#' => Some(Symbol::Hash),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Hash => '#',
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Renders a symbol string such as `10#11#`.
pub fn symbols_to_string(symbols: &[Symbol]) -> String {
    symbols.iter().map(|s| s.as_char()).collect()
}

/// Parses a symbol string; `None` on any other character.
pub fn symbols_from_str(s: &str) -> Option<Vec<Symbol>> {
    s.chars().map(Symbol::from_char).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    pub fn delta(self) -> i64 {
        match self {
            Move::L => -1,
            Move::R => 1,
            Move::S => 0,
        }
    }
}

pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub next: StateId,
    pub write: Vec<Symbol>,
    pub moves: Vec<Move>,
    pub output: Option<Symbol>,
}

/// A validated machine with `tapes` work tapes and a write-only output tape.
/// Transitions are keyed on the state and the symbols under the work-tape
/// heads only; nothing ever reads the output tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineSpec {
    name: String,
    tapes: usize,
    states: Vec<String>,
    start: StateId,
    halt: StateId,
    transitions: FxHashMap<(StateId, u64), Transition>,
}

impl MachineSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn halt(&self) -> StateId {
        self.halt
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id]
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn transition(&self, state: StateId, read: &[Symbol]) -> Option<&Transition> {
        self.transitions.get(&(state, read_key(read)))
    }
}

fn read_key(read: &[Symbol]) -> u64 {
    read.iter().fold(0, |k, s| k * 3 + s.index() as u64)
}

fn perr(line: usize, message: impl Into<String>) -> MachineError {
    MachineError::Parse {
        line,
        message: message.into(),
    }
}

struct Builder {
    names: FxHashMap<String, StateId>,
    states: Vec<String>,
    /// Line where each state is first referenced.
    first_use: Vec<usize>,
}

impl Builder {
    fn id(&mut self, name: &str, line: usize) -> StateId {
        if let Some(&id) = self.names.get(name) {
            return id;
        }
        let id = self.states.len();
        self.names.insert(name.to_string(), id);
        self.states.push(name.to_string());
        self.first_use.push(line);
        id
    }
}

fn is_state_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn parse_symbols(tokens: &[&str], line: usize) -> Result<Vec<Symbol>, MachineError> {
    tokens
        .iter()
        .map(|t| {
            let mut cs = t.chars();
            match (cs.next().and_then(Symbol::from_char), cs.next()) {
                (Some(s), None) => Ok(s),
                _ => Err(perr(
                    line,
                    format!("`{t}` is not a tape symbol (0, 1 or #)"),
                )),
            }
        })
        .collect()
}

fn parse_moves(tokens: &[&str], line: usize) -> Result<Vec<Move>, MachineError> {
    tokens
        .iter()
        .map(|t| match *t {
            "L" => Ok(Move::L),
            "R" => Ok(Move::R),
            "S" => Ok(Move::S),
            other => Err(perr(
                line,
                format!("`{other}` is not a head move (L, R or S)"),
            )),
        })
        .collect()
}

pub fn parse_machine(text: &str) -> Result<MachineSpec, MachineError> {
    let mut name: Option<String> = None;
    let mut tapes: Option<usize> = None;
    let mut start: Option<(String, usize)> = None;
    let mut halt: Option<(String, usize)> = None;
    let mut builder = Builder {
        names: FxHashMap::default(),
        states: Vec::new(),
        first_use: Vec::new(),
    };
    let mut transitions: FxHashMap<(StateId, u64), Transition> = FxHashMap::default();
    let mut defined_at: FxHashMap<(StateId, u64), usize> = FxHashMap::default();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw == "#" || raw.starts_with("# ") || raw.starts_with("#\t") {
            continue;
        }
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&head) = tokens.first() else {
            continue;
        };
        let header_value = || match tokens.as_slice() {
            [_, v] => Ok(v.to_string()),
            _ => Err(perr(line, format!("`{head}` takes exactly one value"))),
        };
        match head {
            "name" => name = Some(header_value()?),
            "tapes" => {
                let v = header_value()?;
                let k: usize = v
                    .parse()
                    .map_err(|_| perr(line, format!("bad tape count `{v}`")))?;
                if k < 2 {
                    return Err(MachineError::TooFewTapes(k));
                }
                tapes = Some(k);
            }
            "start" => start = Some((header_value()?, line)),
            "halt" => halt = Some((header_value()?, line)),
            _ => {
                let k = tapes
                    .ok_or_else(|| perr(line, "`tapes` must be declared before transitions"))?;
                let expected = 1 + k + 1 + 1 + k + k + 1;
                if tokens.len() != expected {
                    return Err(perr(
                        line,
                        format!(
                            "transition needs {expected} fields for {k} tapes, found {}",
                            tokens.len()
                        ),
                    ));
                }
                if tokens[k + 1] != "->" {
                    return Err(perr(line, "expected `->` after the read symbols"));
                }
                for s in [tokens[0], tokens[k + 2]] {
                    if !is_state_name(s) {
                        return Err(perr(line, format!("`{s}` is not a valid state name")));
                    }
                }
                let from = builder.id(tokens[0], line);
                let read = parse_symbols(&tokens[1..=k], line)?;
                let next = builder.id(tokens[k + 2], line);
                let write = parse_symbols(&tokens[k + 3..2 * k + 3], line)?;
                let moves = parse_moves(&tokens[2 * k + 3..3 * k + 3], line)?;
                let output = match tokens[3 * k + 3] {
                    "-" => None,
                    t => Some(
                        parse_symbols(&[t], line).map_err(|_| {
                            perr(
                                line,
                                format!("`{t}` is not an output action (-, 0, 1 or #)"),
                            )
                        })?[0],
                    ),
                };
                let key = (from, read_key(&read));
                if let Some(prev) = defined_at.insert(key, line) {
                    return Err(perr(
                        line,
                        format!(
                            "duplicate transition for state `{}` (first defined on line {prev})",
                            tokens[0]
                        ),
                    ));
                }
                transitions.insert(
                    key,
                    Transition {
                        next,
                        write,
                        moves,
                        output,
                    },
                );
            }
        }
    }

    let tapes = tapes.ok_or_else(|| perr(0, "missing `tapes` declaration"))?;
    let (start_name, start_line) = start.ok_or_else(|| perr(0, "missing `start` declaration"))?;
    let (halt_name, halt_line) = halt.ok_or_else(|| perr(0, "missing `halt` declaration"))?;
    let start = builder.id(&start_name, start_line);
    let halt = builder.id(&halt_name, halt_line);

    let mut has_outgoing = vec![false; builder.states.len()];
    for &(from, _) in transitions.keys() {
        has_outgoing[from] = true;
    }
    if has_outgoing[halt] {
        let line = defined_at
            .iter()
            .filter(|((s, _), _)| *s == halt)
            .map(|(_, &l)| l)
            .min();
        return Err(perr(
            line.unwrap_or(halt_line),
            format!("halt state `{halt_name}` has outgoing transitions"),
        ));
    }
    for (id, name) in builder.states.iter().enumerate() {
        if id != halt && !has_outgoing[id] {
            return Err(perr(
                builder.first_use[id],
                format!("unknown state `{name}` (no transitions and not the halt state)"),
            ));
        }
    }

    Ok(MachineSpec {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        tapes,
        states: builder.states,
        start,
        halt,
        transitions,
    })
}
