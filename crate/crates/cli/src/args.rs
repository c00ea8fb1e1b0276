use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emergelab::ant::Heading;

#[derive(Debug, Parser)]
#[command(
    name = "emergelab",
    version,
    about = "Emergence and irreducibility toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve an elementary cellular automaton.
    Eca(EcaArgs),
    /// Game of Life.
    #[command(subcommand)]
    Life(LifeCommand),
    /// Langton's ant.
    Ant(AntArgs),
    /// E-Turing machines.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Candidate irreducible functions.
    #[command(subcommand)]
    Candidate(CandidateCommand),
    /// Randomness statistics for a bit sequence.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit the report as a JSON object instead of key=value lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EcaArgs {
    #[arg(long, value_parser = clap::value_parser!(u16).range(0..=255))]
    pub rule: u16,
    #[arg(long)]
    pub steps: usize,
    /// Image width; defaults to the full light cone, 2*steps+1 for one cell.
    #[arg(long)]
    pub width: Option<usize>,
    /// Black cells of the seed, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0"
    )]
    pub seed: Vec<i64>,
    /// Run on a ring of `width` cells; needed for rules that flip white.
    #[arg(long)]
    pub cyclic: bool,
    /// PBM image of the history.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Text rendering of the history, '.' and '#'.
    #[arg(long)]
    pub text: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PatternSource {
    #[arg(long, required_unless_present = "cells", conflicts_with = "cells")]
    pub rle: Option<PathBuf>,
    /// Plaintext `.cells` file.
    #[arg(long)]
    pub cells: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LifePrint {
    Bbox,
    Population,
    Rle,
}

#[derive(Debug, Subcommand)]
pub enum LifeCommand {
    /// Run a pattern for a number of generations.
    Run {
        #[command(flatten)]
        source: PatternSource,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "population")]
        print: LifePrint,
        /// PBM snapshot of the final generation over its bounding box.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Classify a pattern as extinct, still, oscillating or translating.
    Fate {
        #[command(flatten)]
        source: PatternSource,
        /// Generations to search; defaults to 1000 or EMERGELAB_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct AntArgs {
    #[arg(long)]
    pub steps: u64,
    #[arg(long, default_value = "N", value_parser = parse_heading)]
    pub heading: Heading,
    #[arg(long)]
    pub detect_highway: bool,
    #[arg(long, default_value_t = 16)]
    pub window: u32,
    #[arg(long, default_value_t = 5)]
    pub confirmations: u32,
    /// PBM of the black cells; the ant's position goes to `<out>.ant`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

fn parse_heading(s: &str) -> Result<Heading, String> {
    s.parse()
        .map_err(|_| format!("heading must be one of N, E, S, W, got `{s}`"))
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Step budget; defaults to 10^7 or EMERGELAB_BUDGET.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum TmCommand {
    /// Run a machine on input n.
    Run {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        budget: Budget,
        /// Write the trace, one `<index> <value> <step>` line per entry.
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Run an approximation machine, then a finisher on its result.
    Compose {
        #[arg(long)]
        approx: PathBuf,
        #[arg(long)]
        finisher: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Measure T(i) = total steps of a machine on input i, for i = 1..=to.
    Timing {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
        #[command(flatten)]
        budget: Budget,
        /// Write the table, one value per line, usable as `--timing`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Audit the P-approximation conditions over an index range.
    Audit {
        #[arg(long)]
        approx: PathBuf,
        #[arg(long)]
        finisher: PathBuf,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// The constant c, an integer or a fraction like 3/2.
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 1)]
        n0: u64,
        /// `identity` for f(i) = i, or a file with f(i) on line i.
        #[arg(long)]
        reference: String,
        /// Timing table file, T(i) on line i.
        #[arg(
            long,
            required_unless_present = "timing_machine",
            conflicts_with = "timing_machine"
        )]
        timing: Option<PathBuf>,
        /// Measure the timing table from this machine instead.
        #[arg(long)]
        timing_machine: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum CandidateCommand {
    /// Decimals of sqrt(m).
    Sqrt {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        digits: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The digit chain f(1..n) of sqrt(m) or of a digit file.
    Chain {
        #[arg(
            long,
            required_unless_present = "digits_file",
            conflicts_with = "digits_file"
        )]
        sqrt: Option<u64>,
        #[arg(long)]
        digits_file: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The i-th binary word in length-lex order.
    Words {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        i: u64,
        #[arg(long)]
        skip_epsilon: bool,
        #[command(flatten)]
        output: Output,
    },
    /// How many words w_i with i < n a DFA accepts.
    Lang {
        #[arg(
            long,
            required_unless_present = "even_ones",
            conflicts_with = "even_ones"
        )]
        dfa: Option<PathBuf>,
        /// The built-in language of words with an even number of ones.
        #[arg(long)]
        even_ones: bool,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        skip_epsilon: bool,
        #[command(flatten)]
        output: Output,
    },
    /// How many of the first n Life configurations are alive after n steps.
    Life {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Analyze the center column of this rule from a single cell.
    #[arg(long, required_unless_present = "bits", conflicts_with = "bits", value_parser = clap::value_parser!(u16).range(0..=255))]
    pub rule: Option<u16>,
    /// Analyze a file of 0/1 characters; whitespace is ignored.
    #[arg(long)]
    pub bits: Option<PathBuf>,
    /// Number of center-column bits.
    #[arg(long, default_value_t = 16384, value_parser = clap::value_parser!(u64).range(1..))]
    pub length: u64,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    /// Largest period to rule out; defaults to min(2048, (length-1)/2).
    #[arg(long)]
    pub max_period: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}
