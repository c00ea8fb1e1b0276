use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::machine::{symbols_to_string, MachineSpec, Symbol};
use super::{Phase, RunError};

/// A tape unbounded in both directions. Unwritten cells read `0`.
#[derive(Debug, Clone, Default)]
struct Tape {
    right: Vec<Symbol>,
    left: Vec<Symbol>,
    head: i64,
}

impl Tape {
    fn with_input(input: &[Symbol]) -> Self {
        Self {
            right: input.to_vec(),
            left: Vec::new(),
            head: 0,
        }
    }

    fn slot(&mut self) -> &mut Symbol {
        let (vec, i) = if self.head >= 0 {
            (&mut self.right, self.head as usize)
        } else {
            (&mut self.left, (-self.head - 1) as usize)
        };
        if i >= vec.len() {
            vec.resize(i + 1, Symbol::Zero);
        }
        &mut vec[i]
    }

    fn read(&self) -> Symbol {
        let cell = if self.head >= 0 {
            self.right.get(self.head as usize)
        } else {
            self.left.get((-self.head - 1) as usize)
        };
        cell.copied().unwrap_or_default()
    }
}

/// One value written on the output tape, and the step at which its closing
/// `#` was written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceEntry {
    pub value: BigUint,
    pub step: u64,
}

/// Everything a run wrote on its output tape.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnumTrace {
    pub entries: Vec<TraceEntry>,
    pub total_steps: u64,
    pub halted: bool,
    /// The raw output tape, separators included.
    pub output: Vec<Symbol>,
}

impl EnumTrace {
    /// A halted run that wrote nothing.
    pub fn empty() -> Self {
        Self {
            halted: true,
            ..Self::default()
        }
    }

    pub fn values(&self) -> Vec<BigUint> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }

    /// Digits written after the last `#`.
    pub fn open_block(&self) -> &[Symbol] {
        let start = self
            .output
            .iter()
            .rposition(|&s| s == Symbol::Hash)
            .map_or(0, |i| i + 1);
        &self.output[start..]
    }

    /// The output tape split into blocks, each with its closing `#`.
    pub fn blocks(&self) -> Vec<&[Symbol]> {
        self.output
            .split_inclusive(|&s| s == Symbol::Hash)
            .filter(|b| b.last() == Some(&Symbol::Hash))
            .collect()
    }

    /// One line per entry: `<index> <value> <step_count>`, indices from 1.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", i + 1, e.value, e.step));
        }
        out
    }
}

impl fmt::Display for EnumTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.export())
    }
}

/// Binary digits of `n`, most significant first.
pub fn encode_number(n: &BigUint) -> Vec<Symbol> {
    if n.is_zero() {
        return vec![Symbol::Zero];
    }
    n.to_str_radix(2)
        .bytes()
        .map(|b| if b == b'1' { Symbol::One } else { Symbol::Zero })
        .collect()
}

fn decode_block(digits: &[Symbol]) -> BigUint {
    digits.iter().fold(BigUint::zero(), |acc, &s| {
        let acc = acc << 1u8;
        if s == Symbol::One {
            acc + 1u8
        } else {
            acc
        }
    })
}

/// Runs `machine` on the number `n`, written in binary on work tape 1 from
/// cell 0 and followed by a `#`.
pub fn run(machine: &MachineSpec, n: &BigUint, step_budget: u64) -> Result<EnumTrace, RunError> {
    if n.is_zero() {
        return Err(RunError::InvalidInput);
    }
    let mut input = encode_number(n);
    input.push(Symbol::Hash);
    run_on_tape(machine, &input, step_budget)
}

/// Runs `machine` with `input` on work tape 1, all other tapes blank, heads
/// at cell 0. Each transition is one step; reaching the halt state costs
/// nothing extra.
pub fn run_on_tape(
    machine: &MachineSpec,
    input: &[Symbol],
    step_budget: u64,
) -> Result<EnumTrace, RunError> {
    let k = machine.tapes();
    let mut tapes: Vec<Tape> = (0..k)
        .map(|i| {
            if i == 0 {
                Tape::with_input(input)
            } else {
                Tape::default()
            }
        })
        .collect();
    let mut state = machine.start();
    let mut trace = EnumTrace::default();
    let mut block_start = 0;
    let mut read = vec![Symbol::Zero; k];

    while state != machine.halt() {
        if trace.total_steps >= step_budget {
            return Err(RunError::BudgetExceeded {
                budget: step_budget,
                trace,
            });
        }
        for (r, t) in read.iter_mut().zip(&tapes) {
            *r = t.read();
        }
        let Some(tr) = machine.transition(state, &read) else {
            return Err(RunError::StuckState {
                state: machine.state_name(state).to_string(),
                read: symbols_to_string(&read),
                trace,
            });
        };
        for ((tape, &w), mv) in tapes.iter_mut().zip(&tr.write).zip(&tr.moves) {
            *tape.slot() = w;
            tape.head += mv.delta();
        }
        trace.total_steps += 1;
        if let Some(sym) = tr.output {
            if sym == Symbol::Hash {
                let digits = &trace.output[block_start..];
                if digits.is_empty() {
                    return Err(RunError::EmptyBlock {
                        step: trace.total_steps,
                        trace,
                    });
                }
                let value = decode_block(digits);
                trace.entries.push(TraceEntry {
                    value,
                    step: trace.total_steps,
                });
                block_start = trace.output.len() + 1;
            }
            trace.output.push(sym);
        }
        state = tr.next;
    }
    trace.halted = true;
    Ok(trace)
}

/// True iff the run halted with every block closed, its values are exactly
/// `reference` in order, and the step counts strictly increase.
pub fn verify_enum(trace: &EnumTrace, reference: &[BigUint]) -> bool {
    trace.halted
        && trace.open_block().is_empty()
        && trace.entries.len() == reference.len()
        && trace
            .entries
            .iter()
            .zip(reference)
            .all(|(e, r)| &e.value == r)
        && trace.entries.windows(2).all(|w| w[0].step < w[1].step)
}

/// Step accounting of a two-phase computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeOutcome {
    /// Last value the finisher wrote.
    pub value: BigUint,
    /// What the approximating machine left on its output tape.
    pub intermediate: Vec<Symbol>,
    pub approx_steps: u64,
    pub finisher_steps: u64,
    pub total_steps: u64,
}

/// Finisher input: the given symbols followed by one more `#`.
pub(crate) fn finisher_input(r: &[Symbol]) -> Vec<Symbol> {
    let mut v = r.to_vec();
    v.push(Symbol::Hash);
    v
}

/// Computes through an approximation: runs `approx` on `n`, hands its whole
/// output tape to `finisher`, and reports the finisher's last value.
/// `step_budget` covers both phases together.
pub fn compose(
    approx: &MachineSpec,
    finisher: &MachineSpec,
    n: &BigUint,
    step_budget: u64,
) -> Result<ComposeOutcome, super::ComposeError> {
    let first = run(approx, n, step_budget).map_err(|e| e.in_phase(Phase::Approx))?;
    let remaining = step_budget - first.total_steps;
    let second = run_on_tape(finisher, &finisher_input(&first.output), remaining)
        .map_err(|e| e.in_phase(Phase::Finisher))?;
    let last = second.entries.last().ok_or(super::ComposeError::NoOutput {
        phase: Phase::Finisher,
    })?;
    Ok(ComposeOutcome {
        value: last.value.clone(),
        approx_steps: first.total_steps,
        finisher_steps: second.total_steps,
        total_steps: first.total_steps + second.total_steps,
        intermediate: first.output,
    })
}
