//! Text formats for solutions and braces.
//!
//! Solution file: a line with `m`, then `m` lines giving `σ_0, ..., σ_{m-1}`
//! as image lists. Brace file: a line with `k`, the `k` rows of the addition
//! table, a blank line, then the `k` rows of the multiplication table.
//! Anything after `#` on a line is a comment. Blank lines are ignored on
//! input.

use std::fmt::Write as _;

use crate::brace::{brace_from_tables, Brace};
use crate::error::{Error, ParseErrorKind, Result};
use crate::perm::{self, parse_index_row, Perm};
use crate::power::PowerSolution;
use crate::solution::Solution;

/// Header comment identifying a power solution and its tuple encoding.
pub fn power_header(m: usize, n: usize) -> String {
    format!("# power m={m} n={n} encoding=lex-msb-first")
}

// (1-based line number, content without comment), blank lines dropped
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
        .collect()
}

fn last_line(text: &str) -> usize {
    text.lines().count() + 1
}

fn parse_size(lines: &[(usize, &str)], text: &str) -> Result<usize> {
    let &(line, content) = lines
        .first()
        .ok_or_else(|| Error::parse(last_line(text), ParseErrorKind::UnexpectedEnd))?;
    let size: usize = content
        .parse()
        .map_err(|_| Error::parse(line, ParseErrorKind::Syntax(format!("expected a size, found `{content}`"))))?;
    if size == 0 {
        return Err(Error::parse(line, ParseErrorKind::Syntax("size must be at least 1".into())));
    }
    Ok(size)
}

fn parse_rows(lines: &[(usize, &str)], count: usize, width: usize, text: &str) -> Result<Vec<(usize, Vec<usize>)>> {
    let rows = &lines[1..];
    if rows.len() > count {
        return Err(Error::parse(
            rows[count].0,
            ParseErrorKind::WrongCount {
                expected: count,
                found: rows.len(),
            },
        ));
    }
    if rows.len() < count {
        return Err(Error::parse(last_line(text), ParseErrorKind::UnexpectedEnd));
    }
    rows.iter()
        .map(|&(line, content)| {
            let row = parse_index_row(content).map_err(|kind| Error::parse(line, kind))?;
            if row.len() != width {
                return Err(Error::parse(
                    line,
                    ParseErrorKind::WrongCount {
                        expected: width,
                        found: row.len(),
                    },
                ));
            }
            if let Some(&value) = row.iter().find(|&&v| v >= width) {
                return Err(Error::parse(line, ParseErrorKind::OutOfRange { value, bound: width }));
            }
            Ok((line, row))
        })
        .collect()
}

/// Reads a σ-table without checking the solution axioms.
pub fn parse_sigma_table(text: &str) -> Result<Vec<Perm>> {
    let lines = content_lines(text);
    let m = parse_size(&lines, text)?;
    parse_rows(&lines, m, m, text)?
        .into_iter()
        .map(|(line, row)| {
            if !perm::is_bijection(&row) {
                return Err(Error::parse(line, ParseErrorKind::NotBijective));
            }
            Perm::new(row)
        })
        .collect()
}

/// Reads a σ-table and checks every solution axiom.
pub fn parse_solution(text: &str) -> Result<Solution> {
    Solution::from_sigma(parse_sigma_table(text)?)
}

pub fn emit_solution(s: &Solution) -> String {
    let mut out = format!("{}\n", s.size());
    for p in s.sigmas() {
        writeln!(out, "{p}").unwrap();
    }
    out
}

pub fn emit_power_solution(p: &PowerSolution) -> String {
    format!(
        "{}\n{}",
        power_header(p.codec.base(), p.codec.arity()),
        emit_solution(&p.result)
    )
}

/// Addition and multiplication tables, in that order.
pub type BraceTables = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Reads addition and multiplication tables without checking brace axioms.
pub fn parse_brace_tables(text: &str) -> Result<BraceTables> {
    let lines = content_lines(text);
    let k = parse_size(&lines, text)?;
    let mut rows: Vec<Vec<usize>> = parse_rows(&lines, 2 * k, k, text)?
        .into_iter()
        .map(|(_, row)| row)
        .collect();
    let mul = rows.split_off(k);
    Ok((rows, mul))
}

pub fn parse_brace(text: &str) -> Result<Brace> {
    let (add, mul) = parse_brace_tables(text)?;
    brace_from_tables(add, mul)
}

pub fn emit_brace(b: &Brace) -> String {
    let row = |r: &[usize]| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("{}\n", b.order());
    for r in b.add_table() {
        writeln!(out, "{}", row(r)).unwrap();
    }
    out.push('\n');
    for r in b.mul_table() {
        writeln!(out, "{}", row(r)).unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Solution,
    Brace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Solution(Solution),
    Brace(Brace),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDocument {
    pub kind: DocumentKind,
    pub payload: Payload,
    pub source_name: String,
}

/// Parses either format, telling them apart by the number of table rows
/// (`m` for a solution, `2k` for a brace).
pub fn parse_document(text: &str, source_name: &str) -> Result<ParsedDocument> {
    let lines = content_lines(text);
    let size = parse_size(&lines, text)?;
    let (kind, payload) = if lines.len() == 2 * size + 1 {
        (DocumentKind::Brace, Payload::Brace(parse_brace(text)?))
    } else {
        (DocumentKind::Solution, Payload::Solution(parse_solution(text)?))
    };
    Ok(ParsedDocument {
        kind,
        payload,
        source_name: source_name.to_string(),
    })
}

pub fn emit_document(doc: &ParsedDocument) -> String {
    match &doc.payload {
        Payload::Solution(s) => emit_solution(s),
        Payload::Brace(b) => emit_brace(b),
    }
}
