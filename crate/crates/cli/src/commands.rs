use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use emergelab::analysis::{block_entropy, no_short_period, ones_fraction};
use emergelab::ant::{detect_highway, run as ant_run, AntState};
use emergelab::candidates::{
    digit_chain_blocks, language_count, life_survival_count, parse_dfa, parse_digits, sqrt_digits,
    ConfigNumbering, DigitStream, LanguageSpec, WordNumbering,
};
use emergelab::eca::{
    center_column, evolve, evolve_cyclic, parse_rule, BitRow, CyclicRow, EcaError,
};
use emergelab::eturing::{
    check_p_approximation, compose, measure_timing, parse_machine, run as tm_run,
    symbols_to_string, BigOWitness, MachineSpec,
};
use emergelab::grid::CellSet;
use emergelab::life::{self, detect_fate, parse_plaintext, parse_rle, write_rle, Fate};
use num_bigint::BigUint;
use num_rational::Ratio;

use crate::args::{
    AnalyzeArgs, AntArgs, CandidateCommand, Command, EcaArgs, LifeCommand, LifePrint,
    PatternSource, TmCommand,
};
use crate::pbm::render_pbm;
use crate::report::Report;
use crate::{CliError, Env};

const TM_DEFAULT_BUDGET: u64 = 10_000_000;
const FATE_DEFAULT_BUDGET: u64 = 1_000;

pub(crate) fn dispatch(cmd: &Command, env: &Env) -> Result<String, CliError> {
    match cmd {
        Command::Eca(a) => eca(a),
        Command::Life(c) => life_cmd(c, env),
        Command::Ant(a) => ant(a),
        Command::Tm(c) => tm(c, env),
        Command::Candidate(c) => candidate(c),
        Command::Analyze(a) => analyze(a),
    }
}

/// Wraps a module error with the operation that raised it.
fn fail<E: Display>(op: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Domain {
        op: op.to_string(),
        message: e.to_string(),
    }
}

fn read(path: &Path, op: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Domain {
        op: op.to_string(),
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write(path: &Path, bytes: &[u8], op: &str) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Domain {
        op: op.to_string(),
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

/// Explicit flag, then `EMERGELAB_BUDGET`, then the default.
fn budget(flag: Option<u64>, env: &Env, default: u64) -> Result<u64, CliError> {
    let value = match (flag, env.budget.as_deref()) {
        (Some(b), _) => b,
        (None, Some(raw)) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "EMERGELAB_BUDGET must be a positive integer, got `{raw}`"
            ))
        })?,
        (None, None) => default,
    };
    if value == 0 {
        return Err(CliError::Usage("step budget must be at least 1".into()));
    }
    Ok(value)
}

fn eca(a: &EcaArgs) -> Result<String, CliError> {
    let op = format!("eca --rule {}", a.rule);
    let rule = parse_rule(a.rule.into()).map_err(fail(&op))?;
    let mut report = Report::new();
    report.push("rule", a.rule).push("steps", a.steps);

    let grid: Vec<Vec<bool>> = if a.cyclic {
        let width = a.width.unwrap_or(2 * a.steps + 1);
        let mut cells = vec![false; width];
        for &p in &a.seed {
            if let Some(c) =
                cells.get_mut((width as i64 / 2 + p).rem_euclid(width.max(1) as i64) as usize)
            {
                *c = true;
            }
        }
        let seed = CyclicRow::new(&cells).map_err(fail(&op))?;
        let rows = evolve_cyclic(&rule, &seed, a.steps);
        report.push("mode", "cyclic").push("width", width);
        rows.iter().map(CyclicRow::cells).collect()
    } else {
        if !rule.is_quiescent() {
            return Err(fail(&op)(EcaError::UnsupportedBackground(rule.number())));
        }
        let seed = BitRow::from_cells(a.seed.iter().copied());
        let (lo, hi) = if seed.is_empty() {
            (0, 0)
        } else {
            (seed.span().0, seed.span().1 - 1)
        };
        let (start, width) = match a.width {
            Some(w) => (lo + (hi - lo).div_euclid(2) - w as i64 / 2, w),
            None => (lo - a.steps as i64, (hi - lo + 1) as usize + 2 * a.steps),
        };
        let history = evolve(&rule, &seed, a.steps).map_err(fail(&op))?;
        report
            .push("mode", "unbounded")
            .push("window_start", start)
            .push("width", width);
        history.grid(start, start + width as i64)
    };

    report.push("rows", grid.len());
    report.push(
        "final_black",
        grid.last().map_or(0, |r| r.iter().filter(|&&b| b).count()),
    );
    if let Some(path) = &a.out {
        write(path, &render_pbm(&grid).map_err(fail(&op))?, &op)?;
        report.push("pbm", path.display());
    }
    if let Some(path) = &a.text {
        let text: String = grid
            .iter()
            .flat_map(|r| r.iter().map(|&b| if b { '#' } else { '.' }).chain(['\n']))
            .collect();
        write(path, text.as_bytes(), &op)?;
        report.push("text", path.display());
    }
    Ok(report.render(a.output.json))
}

fn load_pattern(src: &PatternSource, verb: &str) -> Result<(CellSet, String), CliError> {
    let (path, rle) = match (&src.rle, &src.cells) {
        (Some(p), _) => (p, true),
        (None, Some(p)) => (p, false),
        (None, None) => {
            return Err(CliError::Usage(
                "one of --rle or --cells is required".into(),
            ))
        }
    };
    let op = format!("life {verb} {}", path.display());
    let text = read(path, &op)?;
    let cells = if rle {
        parse_rle(&text)
    } else {
        parse_plaintext(&text)
    }
    .map_err(fail(&op))?;
    Ok((cells, op))
}

/// Black cells over their bounding box; `flip_y` puts larger y on top.
fn cell_grid(cells: &CellSet, extra: Option<(i64, i64)>, flip_y: bool) -> Vec<Vec<bool>> {
    let mut all: Vec<(i64, i64)> = cells.iter().collect();
    all.extend(extra);
    let (Some(min_x), Some(max_x)) = (all.iter().map(|c| c.0).min(), all.iter().map(|c| c.0).max())
    else {
        return Vec::new();
    };
    let min_y = all.iter().map(|c| c.1).min().unwrap();
    let max_y = all.iter().map(|c| c.1).max().unwrap();
    let ys: Vec<i64> = if flip_y {
        (min_y..=max_y).rev().collect()
    } else {
        (min_y..=max_y).collect()
    };
    ys.into_iter()
        .map(|y| (min_x..=max_x).map(|x| cells.contains((x, y))).collect())
        .collect()
}

fn life_cmd(c: &LifeCommand, env: &Env) -> Result<String, CliError> {
    match c {
        LifeCommand::Run {
            source,
            steps,
            print,
            out,
            output,
        } => {
            let (cells, op) = load_pattern(source, "run")?;
            let end = life::run(&cells, *steps);
            if let Some(path) = out {
                let image = render_pbm(&cell_grid(&end, None, false)).map_err(fail(&op))?;
                write(path, &image, &op)?;
            }
            if *print == LifePrint::Rle && !output.json {
                return Ok(write_rle(&end));
            }
            let mut report = Report::new();
            report
                .push("generation", steps)
                .push("population", end.len());
            match print {
                LifePrint::Population => {}
                LifePrint::Bbox => match end.bounding_box() {
                    Some(b) => {
                        report
                            .push("min_x", b.min_x)
                            .push("min_y", b.min_y)
                            .push("max_x", b.max_x)
                            .push("max_y", b.max_y)
                            .push("width", b.width())
                            .push("height", b.height());
                    }
                    None => {
                        report.push("empty", true);
                    }
                },
                LifePrint::Rle => {
                    report.push("rle", write_rle(&end));
                }
            }
            if let Some(path) = out {
                report.push("pbm", path.display());
            }
            Ok(report.render(output.json))
        }
        LifeCommand::Fate {
            source,
            budget: flag,
            output,
        } => {
            let (cells, _) = load_pattern(source, "fate")?;
            let budget = budget(*flag, env, FATE_DEFAULT_BUDGET)?;
            let budget =
                usize::try_from(budget).map_err(|_| CliError::Usage("budget too large".into()))?;
            let fate = detect_fate(&cells, budget);
            let mut report = Report::new();
            report.push("fate", fate);
            match fate {
                Fate::Extinct { t } => report.push("kind", "extinct").push("t", t),
                Fate::StillLife { t } => report.push("kind", "still_life").push("t", t),
                Fate::Oscillator { t, period } => report
                    .push("kind", "oscillator")
                    .push("t", t)
                    .push("period", period),
                Fate::Translator { t, period, dx, dy } => report
                    .push("kind", "translator")
                    .push("t", t)
                    .push("period", period)
                    .push("dx", dx)
                    .push("dy", dy),
                Fate::Unknown { budget } => report.push("kind", "unknown").push("budget", budget),
            };
            Ok(report.render(output.json))
        }
    }
}

fn ant(a: &AntArgs) -> Result<String, CliError> {
    let op = format!("ant --steps {}", a.steps);
    let start = AntState::new(a.heading);
    let mut report = Report::new();
    if a.detect_highway {
        let r = detect_highway(&start, a.steps, a.window, a.confirmations).map_err(fail(&op))?;
        report.extend(r.fields());
    }
    let end = ant_run(&start, a.steps);
    if !a.detect_highway {
        report
            .push("steps", end.steps)
            .push("x", end.pos.0)
            .push("y", end.pos.1)
            .push("heading", end.heading)
            .push("black_cells", end.black.len());
    }
    if let Some(path) = &a.out {
        let grid = cell_grid(&end.black, Some(end.pos), true);
        write(path, &render_pbm(&grid).map_err(fail(&op))?, &op)?;
        let min_x = end
            .black
            .iter()
            .map(|c| c.0)
            .chain([end.pos.0])
            .min()
            .unwrap();
        let max_y = end
            .black
            .iter()
            .map(|c| c.1)
            .chain([end.pos.1])
            .max()
            .unwrap();
        let sidecar = PathBuf::from(format!("{}.ant", path.display()));
        let text = format!(
            "# ant marker for {}, image coordinates from the top-left corner\ncolumn={}\nrow={}\nheading={}\nsteps={}\n",
            file_name(path),
            end.pos.0 - min_x,
            max_y - end.pos.1,
            end.heading,
            end.steps,
        );
        write(&sidecar, text.as_bytes(), &op)?;
        report
            .push("pbm", path.display())
            .push("marker", sidecar.display());
    }
    Ok(report.render(a.output.json))
}

fn load_machine(path: &Path, op: &str) -> Result<MachineSpec, CliError> {
    let text = read(path, op)?;
    parse_machine(&text).map_err(|e| CliError::Domain {
        op: op.to_string(),
        message: format!("{}: {e}", path.display()),
    })
}

/// One integer per non-blank line.
fn read_table<T: std::str::FromStr>(path: &Path, op: &str) -> Result<Vec<T>, CliError> {
    read(path, op)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim().parse().map_err(|_| CliError::Domain {
                op: op.to_string(),
                message: format!(
                    "{} line {}: expected an integer, got `{}`",
                    path.display(),
                    i + 1,
                    l.trim()
                ),
            })
        })
        .collect()
}

fn tm(c: &TmCommand, env: &Env) -> Result<String, CliError> {
    match c {
        TmCommand::Run {
            machine,
            n,
            budget: b,
            export,
            output,
        } => {
            let op = format!("tm run {} n={n}", file_name(machine));
            let m = load_machine(machine, &op)?;
            let budget = budget(b.budget, env, TM_DEFAULT_BUDGET)?;
            let trace = tm_run(&m, &BigUint::from(*n), budget).map_err(fail(&op))?;
            if let Some(path) = export {
                write(path, trace.export().as_bytes(), &op)?;
            }
            let mut report = Report::new();
            report
                .push("machine", m.name())
                .push("n", n)
                .push("halted", trace.halted)
                .push("total_steps", trace.total_steps)
                .push("entries", trace.entries.len());
            for (i, e) in trace.entries.iter().enumerate() {
                report
                    .push(format!("value_{}", i + 1), &e.value)
                    .push(format!("step_{}", i + 1), e.step);
            }
            Ok(report.render(output.json))
        }
        TmCommand::Compose {
            approx,
            finisher,
            n,
            budget: b,
            output,
        } => {
            let op = format!(
                "tm compose {} {} n={n}",
                file_name(approx),
                file_name(finisher)
            );
            let a = load_machine(approx, &op)?;
            let f = load_machine(finisher, &op)?;
            let budget = budget(b.budget, env, TM_DEFAULT_BUDGET)?;
            let out = compose(&a, &f, &BigUint::from(*n), budget).map_err(fail(&op))?;
            let mut report = Report::new();
            report
                .push("approx", a.name())
                .push("finisher", f.name())
                .push("n", n)
                .push("value", &out.value)
                .push("intermediate", symbols_to_string(&out.intermediate))
                .push("approx_steps", out.approx_steps)
                .push("finisher_steps", out.finisher_steps)
                .push("total_steps", out.total_steps);
            Ok(report.render(output.json))
        }
        TmCommand::Timing {
            machine,
            to,
            budget: b,
            out,
            output,
        } => {
            let op = format!("tm timing {}", file_name(machine));
            let m = load_machine(machine, &op)?;
            let budget = budget(b.budget, env, TM_DEFAULT_BUDGET)?;
            let table = measure_timing(&m, 1..=*to, budget).map_err(fail(&op))?;
            if let Some(path) = out {
                let text: String = table.iter().map(|t| format!("{t}\n")).collect();
                write(path, text.as_bytes(), &op)?;
            }
            let mut report = Report::new();
            report.push("machine", m.name()).push("to", to);
            for (i, t) in table.iter().enumerate() {
                report.push(format!("T_{}", i + 1), t);
            }
            Ok(report.render(output.json))
        }
        TmCommand::Audit {
            approx,
            finisher,
            from,
            to,
            c,
            n0,
            reference,
            timing,
            timing_machine,
            budget: b,
            output,
        } => {
            let op = format!("tm audit {} {}", file_name(approx), file_name(finisher));
            let c: Ratio<u64> = c.parse().map_err(|_| {
                CliError::Usage(format!(
                    "--c must be a positive integer or fraction, got `{c}`"
                ))
            })?;
            let witness = BigOWitness::new(c, *n0).map_err(|e| CliError::Usage(e.to_string()))?;
            let a = load_machine(approx, &op)?;
            let f = load_machine(finisher, &op)?;
            let budget = budget(b.budget, env, TM_DEFAULT_BUDGET)?;
            let values: Vec<BigUint> = if reference == "identity" {
                (1..=*to).map(BigUint::from).collect()
            } else {
                read_table(Path::new(reference), &op)?
            };
            let (table, source) = match (timing, timing_machine) {
                (Some(path), _) => (
                    read_table::<u64>(path, &op)?,
                    format!("file {}", path.display()),
                ),
                (None, Some(path)) => {
                    let m = load_machine(path, &op)?;
                    let t = measure_timing(&m, 1..=*to, budget).map_err(fail(&op))?;
                    (t, format!("measured {}", m.name()))
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --timing or --timing-machine is required".into(),
                    ))
                }
            };
            let audit =
                check_p_approximation(&a, &f, &values, &table, witness, *from..=*to, budget)
                    .map_err(fail(&op))?;
            let mut report = Report::new();
            report.extend(audit.fields()).push("timing_table", source);
            Ok(report.render(output.json))
        }
    }
}

fn candidate(c: &CandidateCommand) -> Result<String, CliError> {
    let mut report = Report::new();
    match c {
        CandidateCommand::Sqrt { m, digits, output } => {
            let op = format!("candidate sqrt m={m}");
            let d = sqrt_digits(*m, *digits).map_err(fail(&op))?;
            let text: String = d.iter().map(|&x| char::from(b'0' + x)).collect();
            report
                .push("m", m)
                .push("digits", digits)
                .push("decimals", text);
            Ok(report.render(output.json))
        }
        CandidateCommand::Chain {
            sqrt,
            digits_file,
            n,
            output,
        } => {
            let (mut stream, source, op) = match (sqrt, digits_file) {
                (Some(m), _) => {
                    let op = format!("candidate chain sqrt({m})");
                    (
                        DigitStream::sqrt(*m).map_err(fail(&op))?,
                        format!("sqrt({m})"),
                        op,
                    )
                }
                (None, Some(path)) => {
                    let op = format!("candidate chain {}", path.display());
                    let digits = parse_digits(&read(path, &op)?).map_err(fail(&op))?;
                    (
                        DigitStream::from_digits(digits).map_err(fail(&op))?,
                        path.display().to_string(),
                        op,
                    )
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --sqrt or --digits-file is required".into(),
                    ))
                }
            };
            let blocks = digit_chain_blocks(&mut stream, *n).map_err(fail(&op))?;
            report.push("source", source).push("n", n);
            for (k, b) in blocks.iter().enumerate() {
                report.push(format!("f_{}", k + 1), &b.value);
            }
            report.push("digits_consumed", stream.cursor());
            Ok(report.render(output.json))
        }
        CandidateCommand::Words {
            i,
            skip_epsilon,
            output,
        } => {
            let op = format!("candidate words i={i}");
            let w = WordNumbering {
                skip_epsilon: *skip_epsilon,
            }
            .word(*i)
            .map_err(fail(&op))?;
            report
                .push("i", i)
                .push("skip_epsilon", skip_epsilon)
                .push("word", w);
            Ok(report.render(output.json))
        }
        CandidateCommand::Lang {
            dfa,
            even_ones,
            n,
            skip_epsilon,
            output,
        } => {
            let (lang, name, op) = match (dfa, even_ones) {
                (Some(path), _) => {
                    let op = format!("candidate lang {}", path.display());
                    (
                        parse_dfa(&read(path, &op)?).map_err(fail(&op))?,
                        path.display().to_string(),
                        op,
                    )
                }
                (None, true) => (
                    LanguageSpec::even_ones(),
                    "even-ones".to_string(),
                    "candidate lang even-ones".into(),
                ),
                (None, false) => {
                    return Err(CliError::Usage(
                        "one of --dfa or --even-ones is required".into(),
                    ))
                }
            };
            let numbering = WordNumbering {
                skip_epsilon: *skip_epsilon,
            };
            let count = language_count(&lang, *n, numbering).map_err(fail(&op))?;
            report
                .push("language", name)
                .push("n", n)
                .push("skip_epsilon", skip_epsilon)
                .push("count", count);
            Ok(report.render(output.json))
        }
        CandidateCommand::Life { n, output } => {
            let count = life_survival_count(ConfigNumbering::SquareBinary, *n);
            report
                .push("numbering", "square-binary")
                .push("n", n)
                .push("survivors", count);
            Ok(report.render(output.json))
        }
    }
}

fn parse_bits(text: &str, path: &Path, op: &str) -> Result<Vec<bool>, CliError> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Domain {
                op: op.to_string(),
                message: format!("{}: expected 0 or 1, got `{other}`", path.display()),
            }),
        })
        .collect()
}

fn analyze(a: &AnalyzeArgs) -> Result<String, CliError> {
    let (bits, source, op) = match (a.rule, &a.bits) {
        (Some(rule), _) => {
            let op = format!("analyze --rule {rule}");
            let table = parse_rule(rule.into()).map_err(fail(&op))?;
            let bits = center_column(&table, (a.length - 1) as usize).map_err(fail(&op))?;
            (bits, format!("rule {rule} center column"), op)
        }
        (None, Some(path)) => {
            let op = format!("analyze {}", path.display());
            (
                parse_bits(&read(path, &op)?, path, &op)?,
                path.display().to_string(),
                op,
            )
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --rule or --bits is required".into(),
            ))
        }
    };
    let ones = ones_fraction(&bits).map_err(fail(&op))?;
    let entropy = block_entropy(&bits, a.k).map_err(fail(&op))?;
    let max_period = a
        .max_period
        .unwrap_or_else(|| 2048.min(bits.len().saturating_sub(1) / 2));
    if bits.len() <= 2 * max_period {
        return Err(CliError::Domain {
            op,
            message: format!(
                "{} bits are too few to rule out periods up to {max_period}",
                bits.len()
            ),
        });
    }
    let mut report = Report::new();
    report
        .push("source", source)
        .push("length", bits.len())
        .push("ones", bits.iter().filter(|&&b| b).count())
        .push("ones_fraction", ones)
        .push(
            "ones_decimal",
            format!("{:.6}", *ones.numer() as f64 / *ones.denom() as f64),
        )
        .push("k", a.k)
        .push("block_entropy", format!("{entropy:.6}"))
        .push("max_period", max_period)
        .push("no_short_period", no_short_period(&bits, max_period));
    Ok(report.render(a.output.json))
}
