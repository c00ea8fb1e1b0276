//! Empirical audit of the approximation conditions at finitely many
//! indices. A passing report is evidence, not a proof.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_rational::Ratio;

use super::exec::{finisher_input, run, run_on_tape};
use super::machine::{symbols_to_string, MachineSpec, Symbol};
use super::{AuditError, Phase};

/// Constants `c > 0` and `n0 > 0` of a big-O claim `F(n) <= c * g(n)` for
/// `n >= n0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BigOWitness {
    c: Ratio<u64>,
    n0: u64,
}

impl BigOWitness {
    pub fn new(c: Ratio<u64>, n0: u64) -> Result<Self, AuditError> {
        if *c.numer() == 0 || n0 == 0 {
            return Err(AuditError::BadWitness);
        }
        Ok(Self { c, n0 })
    }

    pub fn c(&self) -> Ratio<u64> {
        self.c
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxRecord {
    pub index: u64,
    /// The intermediate result, closing `#` included.
    pub intermediate: Vec<Symbol>,
    pub finisher_steps: u64,
    /// `c * T(i) / i`.
    pub bound: Ratio<u128>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    pub records: Vec<ApproxRecord>,
    pub pass: bool,
    /// No index was audited.
    pub vacuous: bool,
    pub witness: BigOWitness,
    /// The table `T(i)` the bounds were computed from, indexed from `i = 1`.
    /// It is whatever the caller supplied, usually measured steps of the best
    /// machine at hand, not a proven optimum.
    pub reference_timing: Vec<u64>,
    pub approx_steps: u64,
}

impl ApproxReport {
    pub fn first_failure(&self) -> Option<u64> {
        self.records.iter().find(|r| !r.pass).map(|r| r.index)
    }

    /// Ordered `key=value` pairs: summary first, then one group per index.
    pub fn fields(&self) -> Vec<(String, String)> {
        let mut f = vec![
            ("pass".to_string(), self.pass.to_string()),
            ("vacuous".to_string(), self.vacuous.to_string()),
            ("c".to_string(), self.witness.c.to_string()),
            ("n0".to_string(), self.witness.n0.to_string()),
            ("audited".to_string(), self.records.len().to_string()),
            ("approx_steps".to_string(), self.approx_steps.to_string()),
            ("timing_source".to_string(), "supplied".to_string()),
        ];
        if let Some(i) = self.first_failure() {
            f.push(("first_failure".to_string(), i.to_string()));
        }
        for r in &self.records {
            let i = r.index;
            f.push((format!("r_{i}"), symbols_to_string(&r.intermediate)));
            f.push((format!("finisher_steps_{i}"), r.finisher_steps.to_string()));
            f.push((format!("bound_{i}"), format!("{:.3}", ratio_f64(&r.bound))));
            f.push((format!("pass_{i}"), r.pass.to_string()));
        }
        f
    }
}

fn ratio_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl fmt::Display for ApproxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.fields() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Steps `machine` takes on each input of `range`, as a timing table for
/// [`check_p_approximation`].
pub fn measure_timing(
    machine: &MachineSpec,
    range: RangeInclusive<u64>,
    step_budget: u64,
) -> Result<Vec<u64>, super::RunError> {
    range
        .map(|i| run(machine, &BigUint::from(i), step_budget).map(|t| t.total_steps))
        .collect()
}

/// Audits `approx` together with `finisher` at every index of `indices` that
/// is at least `witness.n0`.
///
/// `approx` runs once on the largest audited index; its `i`-th output block
/// is `r_i`. The finisher must turn each `r_i` into `reference_values[i-1]`
/// within `c * reference_timing[i-1] / i` steps.
pub fn check_p_approximation(
    approx: &MachineSpec,
    finisher: &MachineSpec,
    reference_values: &[BigUint],
    reference_timing: &[u64],
    witness: BigOWitness,
    indices: RangeInclusive<u64>,
    step_budget: u64,
) -> Result<ApproxReport, AuditError> {
    let audited: Vec<u64> = indices.filter(|&i| i >= witness.n0 && i >= 1).collect();
    let mut report = ApproxReport {
        records: Vec::new(),
        pass: true,
        vacuous: audited.is_empty(),
        witness,
        reference_timing: reference_timing.to_vec(),
        approx_steps: 0,
    };
    let Some(&n) = audited.iter().max() else {
        return Ok(report);
    };
    let needed = n as usize;
    if reference_values.len() < needed || reference_timing.len() < needed {
        return Err(AuditError::ReferenceTooShort { needed });
    }

    let trace =
        run(approx, &BigUint::from(n), step_budget).map_err(|e| e.in_phase(Phase::Approx))?;
    report.approx_steps = trace.total_steps;
    let blocks = trace.blocks();

    for i in audited {
        let r_i = blocks
            .get(i as usize - 1)
            .ok_or(AuditError::MissingIntermediate(i))?;
        let fin = run_on_tape(finisher, &finisher_input(r_i), step_budget).map_err(|e| {
            AuditError::Finisher {
                index: i,
                source: Box::new(e.in_phase(Phase::Finisher)),
            }
        })?;
        let expected = &reference_values[i as usize - 1];
        if fin.entries.last().map(|e| &e.value) != Some(expected) {
            return Err(AuditError::WrongFinisherOutput(i));
        }
        let c = witness.c;
        let bound = Ratio::new(
            u128::from(*c.numer()) * u128::from(reference_timing[i as usize - 1]),
            u128::from(*c.denom()) * u128::from(i),
        );
        let pass = Ratio::from_integer(u128::from(fin.total_steps)) <= bound;
        report.pass &= pass;
        report.records.push(ApproxRecord {
            index: i,
            intermediate: r_i.to_vec(),
            finisher_steps: fin.total_steps,
            bound,
            pass,
        });
    }
    Ok(report)
}
