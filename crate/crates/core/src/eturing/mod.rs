//! Multi-tape Turing machines over `{0, 1, #}` with a write-only output
//! tape, read as enumerative machines: a run on `n` should write
//! `f(1)#f(2)#...#f(n)#`, and each block is stamped with the step at which
//! it was closed.
//!
//! Values travel in binary, most significant bit first. Inputs sit on work
//! tape 1 from cell 0 and are followed by a `#` marking their end.

mod approx;
mod exec;
mod machine;

use std::fmt;

use thiserror::Error;

pub use approx::{check_p_approximation, measure_timing, ApproxRecord, ApproxReport, BigOWitness};
pub use exec::{
    compose, encode_number, run, run_on_tape, verify_enum, ComposeOutcome, EnumTrace, TraceEntry,
};
pub use machine::{
    parse_machine, symbols_from_str, symbols_to_string, MachineSpec, Move, StateId, Symbol,
    Transition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("a machine needs at least 2 work tapes, found {0}")]
    TooFewTapes(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("step budget of {budget} exhausted after {} values", trace.entries.len())]
    BudgetExceeded { budget: u64, trace: EnumTrace },
    #[error("no transition from state `{state}` reading {read} after {} steps", trace.total_steps)]
    StuckState {
        state: String,
        read: String,
        trace: EnumTrace,
    },
    #[error("empty output block closed at step {step}")]
    EmptyBlock { step: u64, trace: EnumTrace },
    #[error("input must be a positive integer")]
    InvalidInput,
}

impl RunError {
    pub fn trace(&self) -> Option<&EnumTrace> {
        match self {
            RunError::BudgetExceeded { trace, .. }
            | RunError::StuckState { trace, .. }
            | RunError::EmptyBlock { trace, .. } => Some(trace),
            RunError::InvalidInput => None,
        }
    }

    fn in_phase(self, phase: Phase) -> ComposeError {
        ComposeError::Run {
            phase,
            source: self,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Approx,
    Finisher,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Approx => "approximation",
            Phase::Finisher => "finisher",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("{phase} phase: {source}")]
    Run { phase: Phase, source: RunError },
    #[error("{phase} phase wrote no value")]
    NoOutput { phase: Phase },
}

impl ComposeError {
    pub fn phase(&self) -> Phase {
        match self {
            ComposeError::Run { phase, .. } | ComposeError::NoOutput { phase } => *phase,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("finisher produced the wrong value for index {0}")]
    WrongFinisherOutput(u64),
    #[error("approximating machine wrote no block for index {0}")]
    MissingIntermediate(u64),
    #[error("index {index}: {source}")]
    Finisher {
        index: u64,
        source: Box<ComposeError>,
    },
    #[error(transparent)]
    Approx(Box<ComposeError>),
    #[error("reference tables must cover indices 1..={needed}")]
    ReferenceTooShort { needed: usize },
    #[error("witness needs c > 0 and n0 > 0")]
    BadWitness,
}

impl From<ComposeError> for AuditError {
    fn from(e: ComposeError) -> Self {
        AuditError::Approx(Box::new(e))
    }
}
