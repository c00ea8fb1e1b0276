//! RLE and plaintext (`.cells`) pattern files.

use thiserror::Error;

use super::{CellSet, Coord};

/// Longest line the writer emits.
const MAX_LINE: usize = 69;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RleError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported rule `{0}`; only B3/S23 is supported")]
    UnsupportedRule(String),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> RleError {
    RleError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_life_rule(rule: &str) -> bool {
    let r = rule.trim().to_ascii_uppercase();
    matches!(r.as_str(), "B3/S23" | "S23/B3" | "23/3")
}

/// Parses `x = W, y = H[, rule = ...]`.
fn parse_header(text: &str, line: usize) -> Result<(), RleError> {
    let mut seen_x = false;
    let mut seen_y = false;
    let mut column = 1;
    for part in text.split(',') {
        let col = column;
        column += part.len() + 1;
        let Some((key, value)) = part.split_once('=') else {
            return Err(syntax(
                line,
                col,
                format!("expected `key = value`, found `{}`", part.trim()),
            ));
        };
        let value = value.trim();
        match key.trim() {
            "x" | "y" => {
                value
                    .parse::<u64>()
                    .map_err(|_| syntax(line, col, format!("bad dimension `{value}`")))?;
                if key.trim() == "x" {
                    seen_x = true;
                } else {
                    seen_y = true;
                }
            }
            "rule" => {
                if !is_life_rule(value) {
                    return Err(RleError::UnsupportedRule(value.to_string()));
                }
            }
            other => return Err(syntax(line, col, format!("unknown header key `{other}`"))),
        }
    }
    if !(seen_x && seen_y) {
        return Err(syntax(line, 1, "header must give both x and y"));
    }
    Ok(())
}

/// Reads an RLE pattern. The top-left corner of the declared box is (0, 0).
pub fn parse_rle(text: &str) -> Result<CellSet, RleError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header_seen = false;
    let mut cells = CellSet::new();
    let (mut x, mut y) = (0i64, 0i64);
    let mut count: Option<(i64, usize)> = None;
    let mut last_line = 0;

    for (lineno, raw) in lines.by_ref() {
        last_line = lineno;
        let trimmed = raw.trim_start();
        if trimmed.starts_with('#') || (!header_seen && trimmed.is_empty()) {
            continue;
        }
        if !header_seen {
            parse_header(trimmed, lineno)?;
            header_seen = true;
            continue;
        }
        for (ci, ch) in raw.char_indices() {
            let column = ci + 1;
            match ch {
                '0'..='9' => {
                    let d = i64::from(ch as u8 - b'0');
                    let (n, start) = count.unwrap_or((0, column));
                    let n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d))
                        .ok_or_else(|| syntax(lineno, start, "run count overflows"))?;
                    count = Some((n, start));
                }
                'b' | 'o' | '$' | '!' => {
                    let n = count.take().map_or(1, |(n, _)| n);
                    if n == 0 {
                        return Err(syntax(lineno, column, "run count of zero"));
                    }
                    match ch {
                        'b' => x += n,
                        'o' => {
                            cells.extend((0..n).map(|i| (x + i, y)));
                            x += n;
                        }
                        '$' => {
                            y += n;
                            x = 0;
                        }
                        _ => return Ok(cells),
                    }
                }
                c if c.is_whitespace() => {
                    if count.is_some() {
                        return Err(syntax(lineno, column, "whitespace inside a run"));
                    }
                }
                other => {
                    return Err(syntax(
                        lineno,
                        column,
                        format!("unexpected symbol `{other}`"),
                    ));
                }
            }
        }
    }
    if !header_seen {
        return Err(syntax(1, 1, "missing header line"));
    }
    Err(syntax(last_line.max(1), 1, "missing `!` terminator"))
}

fn push_run(tokens: &mut Vec<String>, n: usize, tag: char) {
    if n == 0 {
        return;
    }
    tokens.push(if n == 1 {
        tag.to_string()
    } else {
        format!("{n}{tag}")
    });
}

/// Writes canonical RLE: the pattern is moved so its bounding box starts at
/// (0, 0), trailing dead cells are dropped, blank rows are merged into one
/// `n$` run, and lines are wrapped without splitting a run.
pub fn write_rle(cells: &CellSet) -> String {
    let (sorted, _) = cells.normalized();
    let (w, h) = match cells.bounding_box() {
        Some(b) => (b.width(), b.height()),
        None => (0, 0),
    };

    let mut tokens: Vec<String> = Vec::new();
    let mut cur_row = 0i64;
    let mut i = 0;
    while i < sorted.len() {
        let row = sorted[i].1;
        push_run(&mut tokens, (row - cur_row) as usize, '$');
        cur_row = row;
        let mut x = 0i64;
        while i < sorted.len() && sorted[i].1 == row {
            let start = sorted[i].0;
            let mut end = start;
            while i < sorted.len() && sorted[i] == (end, row) {
                end += 1;
                i += 1;
            }
            push_run(&mut tokens, (start - x) as usize, 'b');
            push_run(&mut tokens, (end - start) as usize, 'o');
            x = end;
        }
    }
    tokens.push("!".to_string());

    let mut out = format!("x = {w}, y = {h}, rule = B3/S23\n");
    let mut line_len = 0;
    for tok in tokens {
        if line_len > 0 && line_len + tok.len() > MAX_LINE {
            out.push('\n');
            line_len = 0;
        }
        line_len += tok.len();
        out.push_str(&tok);
    }
    out.push('\n');
    out
}

/// Reads the plaintext format: `!` comment lines, then rows of `.` (dead)
/// and `O` (live).
pub fn parse_plaintext(text: &str) -> Result<CellSet, RleError> {
    let mut cells = CellSet::new();
    let mut y = 0i64;
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('!') {
            continue;
        }
        for (ci, ch) in line.trim_end().char_indices() {
            match ch {
                '.' => {}
                'O' | '*' => {
                    cells.insert((ci as i64, y) as Coord);
                }
                other => {
                    return Err(syntax(
                        i + 1,
                        ci + 1,
                        format!("unexpected symbol `{other}`"),
                    ));
                }
            }
        }
        y += 1;
    }
    Ok(cells)
}
