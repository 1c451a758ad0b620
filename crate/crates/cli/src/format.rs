//! Plain-text matrix files.
//!
//! A matrix file is a header line holding `n` followed by `n` rows of
//! exactly `n` characters from `{0, 1}`. An edge-list file has the header
//! `n m` and then `m` lines `u v` with 1-based vertex ids. Both may end with
//! blank lines and `#` comment lines. The header's token count decides
//! which format is being read.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use stable_index_core::BoolMatrix;

use crate::error::CliError;

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with their 1-based numbers, `\r` stripped.
fn numbered(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize, CliError> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("{what} must be a non-negative integer, got {token:?}")))
}

/// Anything after the body must be blank or a comment.
fn check_trailer<'a>(rest: impl Iterator<Item = (usize, &'a str)>) -> Result<(), CliError> {
    for (no, line) in rest {
        if !(line.trim().is_empty() || line.starts_with('#')) {
            return Err(parse_err(no, "unexpected content after the matrix"));
        }
    }
    Ok(())
}

/// Reads either format.
pub fn parse_matrix(text: &str) -> Result<BoolMatrix, CliError> {
    let (no, header) = numbered(text).next().ok_or_else(|| parse_err(1, "empty file"))?;
    match header.split_whitespace().count() {
        1 => parse_matrix_file(text),
        2 => parse_edge_list(text),
        _ => Err(parse_err(no, "header must be \"n\" or \"n m\"")),
    }
}

pub fn parse_matrix_file(text: &str) -> Result<BoolMatrix, CliError> {
    let mut lines = numbered(text);
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let n = parse_count(header.trim(), no, "order")?;
    if n == 0 {
        return Err(parse_err(no, "order must be at least 1"));
    }
    let mut a = BoolMatrix::zeros(n);
    for i in 0..n {
        let (no, row) = lines
            .next()
            .ok_or_else(|| parse_err(no + i + 1, format!("expected {n} rows, found {i}")))?;
        if row.len() != n {
            return Err(parse_err(no, format!("row has {} characters, expected {n}", row.chars().count())));
        }
        for (j, c) in row.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => a.set(i, j, true),
                _ => return Err(parse_err(no, format!("column {}: expected 0 or 1", j + 1))),
            }
        }
    }
    check_trailer(lines)?;
    Ok(a)
}

pub fn parse_edge_list(text: &str) -> Result<BoolMatrix, CliError> {
    let mut lines = numbered(text);
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let [nt, mt] = tokens[..] else {
        return Err(parse_err(no, "edge-list header must be \"n m\""));
    };
    let n = parse_count(nt, no, "order")?;
    let m = parse_count(mt, no, "arc count")?;
    if n == 0 {
        return Err(parse_err(no, "order must be at least 1"));
    }
    let mut a = BoolMatrix::zeros(n);
    let mut seen = BTreeSet::new();
    for e in 0..m {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(no + e + 1, format!("expected {m} arcs, found {e}")))?;
        let ends: Vec<&str> = line.split_whitespace().collect();
        let [ut, vt] = ends[..] else {
            return Err(parse_err(no, "arc must be \"u v\""));
        };
        let u = parse_count(ut, no, "vertex")?;
        let v = parse_count(vt, no, "vertex")?;
        for w in [u, v] {
            if !(1..=n).contains(&w) {
                return Err(parse_err(no, format!("vertex {w} outside 1..={n}")));
            }
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(no, format!("duplicate arc {u} {v}")));
        }
        a.set(u - 1, v - 1, true);
    }
    check_trailer(lines)?;
    Ok(a)
}

pub fn write_matrix_file(a: &BoolMatrix) -> String {
    let mut out = format!("{}\n", a.n());
    for i in 0..a.n() {
        for j in 0..a.n() {
            out.push(if a.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn write_edge_list(a: &BoolMatrix) -> String {
    let arcs: Vec<_> = a.ones_positions().collect();
    let mut out = format!("{} {}\n", a.n(), arcs.len());
    for (u, v) in arcs {
        writeln!(out, "{} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}
