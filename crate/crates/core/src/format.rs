//! Line-oriented text formats. Writers are canonical (one `\n` after every
//! line); parsers report the 1-based line and column of the first problem.

use std::fmt::Write as _;

use crate::cocycle::{Cocycle, Potential};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::quantum::MonomialOperator;
use crate::relation::{checked_pow, index_tuple, RMap};
use crate::Color;

pub const RMAP_MAGIC: &str = "simplex-rmap v1";
pub const COCYCLE_MAGIC: &str = "simplex-cocycle v1";
pub const POTENTIAL_MAGIC: &str = "simplex-potential v1";
pub const OPERATOR_MAGIC: &str = "simplex-operator v1";

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy)]
struct Token<'a> {
    column: usize,
    text: &'a str,
}

struct Reader<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.split('\n').collect();
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        Reader { lines, next: 0 }
    }

    /// Next line with its number and tokens.
    fn line(&mut self, what: &str) -> Result<(usize, Vec<Token<'a>>)> {
        let number = self.next + 1;
        let Some(line) = self.lines.get(self.next) else {
            return Err(parse_error(number, 1, format!("unexpected end of input, expected {what}")));
        };
        self.next += 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token {
                        column: line[..s].chars().count() + 1,
                        text: &line[s..i],
                    });
                    start = None;
                }
                _ => {}
            }
        }
        Ok((number, tokens))
    }

    fn expect_magic(&mut self, magic: &str) -> Result<()> {
        let (number, _) = self.line(magic)?;
        let raw = self.lines[number - 1].trim_end_matches('\r');
        if raw != magic {
            return Err(parse_error(number, 1, format!("expected header {magic:?}, found {raw:?}")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        if self.next < self.lines.len() {
            return Err(parse_error(self.next + 1, 1, "unexpected extra line"));
        }
        Ok(())
    }
}

fn number<T: std::str::FromStr>(line: usize, token: Token<'_>, what: &str) -> Result<T> {
    token
        .text
        .parse()
        .map_err(|_| parse_error(line, token.column, format!("expected {what}, found {:?}", token.text)))
}

/// Parses `k1=v1 k2=v2 …` with exactly the given keys in order.
fn key_values(line: usize, tokens: &[Token<'_>], keys: &[&str]) -> Result<Vec<u64>> {
    let end = tokens.last().map_or(1, |t| t.column + t.text.len());
    if tokens.len() != keys.len() {
        return Err(parse_error(
            line,
            tokens.get(keys.len()).map_or(end, |t| t.column),
            format!("expected fields {}", keys.join(" ")),
        ));
    }
    tokens
        .iter()
        .zip(keys)
        .map(|(t, key)| {
            let value = t
                .text
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| parse_error(line, t.column, format!("expected {key}=<value>")))?;
            value.parse().map_err(|_| {
                parse_error(line, t.column + key.len() + 1, format!("{key} must be a non-negative integer"))
            })
        })
        .collect()
}

/// Parses `i1 … ik -> o1 … ol` into its two halves.
fn arrow_line<'a>(
    line: usize,
    tokens: &[Token<'a>],
    left: usize,
    right: usize,
) -> Result<(Vec<Token<'a>>, Vec<Token<'a>>)> {
    let end = tokens.last().map_or(1, |t| t.column + t.text.len());
    let arrow = tokens
        .iter()
        .position(|t| t.text == "->")
        .ok_or_else(|| parse_error(line, end, "missing \"->\""))?;
    if arrow != left {
        let col = tokens.get(left.min(arrow)).map_or(end, |t| t.column);
        return Err(parse_error(line, col, format!("expected {left} values before \"->\"")));
    }
    let (lhs, rhs) = (&tokens[..arrow], &tokens[arrow + 1..]);
    if rhs.len() != right {
        let col = rhs.get(right).map_or(end, |t| t.column);
        return Err(parse_error(line, col, format!("expected {right} values after \"->\"")));
    }
    Ok((lhs.to_vec(), rhs.to_vec()))
}

/// Reads `expected.len()` colors below `colors`, requiring them to equal `expected`.
fn input_tuple(line: usize, tokens: &[Token<'_>], expected: &[Color]) -> Result<()> {
    for (t, &want) in tokens.iter().zip(expected) {
        let got: Color = number(line, *t, "a color")?;
        if got != want {
            return Err(parse_error(
                line,
                t.column,
                format!("inputs must be in row-major order: expected {want}, found {got}"),
            ));
        }
    }
    Ok(())
}

fn colors_below(line: usize, tokens: &[Token<'_>], colors: usize) -> Result<Vec<Color>> {
    tokens
        .iter()
        .map(|t| {
            let c: Color = number(line, *t, "a color")?;
            if c as usize >= colors {
                return Err(parse_error(line, t.column, format!("color {c} outside 0..{colors}")));
            }
            Ok(c)
        })
        .collect()
}

fn join(values: impl IntoIterator<Item = impl std::fmt::Display>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_rmap(r: &RMap) -> String {
    let mut out = format!("{RMAP_MAGIC}\nn={} m={}\n", r.arity(), r.colors());
    for i in 0..r.len() {
        let _ = writeln!(out, "{} -> {}", join(r.input(i)), join(r.image(i)));
    }
    out
}

pub fn parse_rmap(text: &str) -> Result<RMap> {
    let mut reader = Reader::new(text);
    reader.expect_magic(RMAP_MAGIC)?;
    let (line, tokens) = reader.line("the n=<n> m=<m> header")?;
    let kv = key_values(line, &tokens, &["n", "m"])?;
    let (n, m) = (kv[0] as usize, kv[1] as usize);
    if n < 2 || m < 1 {
        return Err(parse_error(line, 1, "need n ≥ 2 and m ≥ 1"));
    }
    let rows = checked_pow(m, n)
        .filter(|&r| r <= 1 << 26)
        .ok_or_else(|| parse_error(line, 1, "table too large"))?;
    let mut table = Vec::with_capacity(rows * n);
    let mut expected = vec![0 as Color; n];
    for i in 0..rows {
        let (line, tokens) = reader.line("a table row")?;
        let (lhs, rhs) = arrow_line(line, &tokens, n, n)?;
        index_tuple(m, n, i, &mut expected);
        input_tuple(line, &lhs, &expected)?;
        table.extend(colors_below(line, &rhs, m)?);
    }
    reader.finish()?;
    RMap::new(n, m, table)
}

pub fn write_cocycle(phi: &Cocycle) -> String {
    let mut out = format!("{COCYCLE_MAGIC}\nm_colors={} modulus={}\n", phi.colors(), phi.modulus());
    let mut t = [0 as Color; 3];
    for (i, e) in phi.table().iter().enumerate() {
        index_tuple(phi.colors(), 3, i, &mut t);
        let _ = writeln!(out, "{} -> {e}", join(t));
    }
    out
}

fn exponent(line: usize, token: Token<'_>, modulus: u64) -> Result<u64> {
    let e: u64 = number(line, token, "an exponent")?;
    if e >= modulus {
        return Err(parse_error(line, token.column, format!("exponent {e} not reduced mod {modulus}")));
    }
    Ok(e)
}

pub fn parse_cocycle(text: &str) -> Result<Cocycle> {
    let mut reader = Reader::new(text);
    reader.expect_magic(COCYCLE_MAGIC)?;
    let (line, tokens) = reader.line("the m_colors=<..> modulus=<..> header")?;
    let kv = key_values(line, &tokens, &["m_colors", "modulus"])?;
    let (colors, modulus) = (kv[0] as usize, kv[1]);
    if colors < 1 || modulus < 1 || colors > 1 << 8 {
        return Err(parse_error(line, 1, "need 1 ≤ m_colors ≤ 256 and modulus ≥ 1"));
    }
    let mut table = Vec::with_capacity(colors.pow(3));
    let mut expected = [0 as Color; 3];
    for i in 0..colors.pow(3) {
        let (line, tokens) = reader.line("a table row")?;
        let (lhs, rhs) = arrow_line(line, &tokens, 3, 1)?;
        index_tuple(colors, 3, i, &mut expected);
        input_tuple(line, &lhs, &expected)?;
        table.push(exponent(line, rhs[0], modulus)?);
    }
    reader.finish()?;
    Cocycle::new(colors, modulus, table)
}

pub fn write_potential(psi: &Potential) -> String {
    let mut out = format!("{POTENTIAL_MAGIC}\nm_colors={} modulus={}\n", psi.colors(), psi.modulus());
    for (x, e) in psi.table().iter().enumerate() {
        let _ = writeln!(out, "{x} -> {e}");
    }
    out
}

pub fn parse_potential(text: &str) -> Result<Potential> {
    let mut reader = Reader::new(text);
    reader.expect_magic(POTENTIAL_MAGIC)?;
    let (line, tokens) = reader.line("the m_colors=<..> modulus=<..> header")?;
    let kv = key_values(line, &tokens, &["m_colors", "modulus"])?;
    let (colors, modulus) = (kv[0] as usize, kv[1]);
    if modulus < 1 || colors > 1 << 20 {
        return Err(parse_error(line, 1, "need modulus ≥ 1 and a sane color count"));
    }
    let mut table = Vec::with_capacity(colors);
    for x in 0..colors {
        let (line, tokens) = reader.line("a potential row")?;
        let (lhs, rhs) = arrow_line(line, &tokens, 1, 1)?;
        input_tuple(line, &lhs, &[x as Color])?;
        table.push(exponent(line, rhs[0], modulus)?);
    }
    reader.finish()?;
    Potential::new(modulus, table)
}

/// `rows cols nnz` header, then `r c v` sorted by `(c, r)`.
pub fn write_matrix(m: &SparseMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.triples() {
        let _ = writeln!(out, "{r} {c} {v}");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<SparseMatrix> {
    let mut reader = Reader::new(text);
    let (line, tokens) = reader.line("the rows cols nnz header")?;
    if tokens.len() != 3 {
        return Err(parse_error(line, 1, "expected rows cols nnz"));
    }
    let rows: usize = number(line, tokens[0], "a row count")?;
    let cols: usize = number(line, tokens[1], "a column count")?;
    let nnz: usize = number(line, tokens[2], "an entry count")?;
    let mut triples = Vec::with_capacity(nnz.min(1 << 24));
    for _ in 0..nnz {
        let (line, tokens) = reader.line("a matrix entry")?;
        if tokens.len() != 3 {
            return Err(parse_error(line, 1, "expected r c v"));
        }
        let r: usize = number(line, tokens[0], "a row index")?;
        let c: usize = number(line, tokens[1], "a column index")?;
        let v: i64 = number(line, tokens[2], "an integer entry")?;
        if r >= rows {
            return Err(parse_error(line, tokens[0].column, format!("row {r} outside 0..{rows}")));
        }
        if c >= cols {
            return Err(parse_error(line, tokens[1].column, format!("column {c} outside 0..{cols}")));
        }
        triples.push((r, c, v));
    }
    reader.finish()?;
    SparseMatrix::from_triples(rows, cols, &triples)
}

pub fn write_operator(op: &MonomialOperator) -> String {
    let mut out = format!(
        "{OPERATOR_MAGIC}\narity={} m_colors={} modulus={}\n",
        op.arity(),
        op.colors(),
        op.modulus()
    );
    let mut t = vec![0 as Color; op.arity()];
    let mut u = vec![0 as Color; op.arity()];
    for i in 0..op.perm().len() {
        let (target, e) = op.apply(i);
        index_tuple(op.colors(), op.arity(), i, &mut t);
        index_tuple(op.colors(), op.arity(), target, &mut u);
        let _ = writeln!(out, "{} -> {} {e}", join(&t), join(&u));
    }
    out
}

pub fn parse_operator(text: &str) -> Result<MonomialOperator> {
    let mut reader = Reader::new(text);
    reader.expect_magic(OPERATOR_MAGIC)?;
    let (line, tokens) = reader.line("the arity=<..> m_colors=<..> modulus=<..> header")?;
    let kv = key_values(line, &tokens, &["arity", "m_colors", "modulus"])?;
    let (arity, colors, modulus) = (kv[0] as usize, kv[1] as usize, kv[2]);
    let len = checked_pow(colors, arity)
        .filter(|&l| l <= 1 << 24 && arity > 0 && modulus > 0)
        .ok_or_else(|| parse_error(line, 1, "operator shape out of range"))?;
    let mut perm = Vec::with_capacity(len);
    let mut phase = Vec::with_capacity(len);
    let mut expected = vec![0 as Color; arity];
    for i in 0..len {
        let (line, tokens) = reader.line("an operator row")?;
        let (lhs, rhs) = arrow_line(line, &tokens, arity, arity + 1)?;
        index_tuple(colors, arity, i, &mut expected);
        input_tuple(line, &lhs, &expected)?;
        let target = colors_below(line, &rhs[..arity], colors)?;
        perm.push(crate::relation::tuple_index(colors, &target));
        phase.push(exponent(line, rhs[arity], modulus)?);
    }
    reader.finish()?;
    MonomialOperator::new(arity, colors, modulus, perm, phase)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(result: Result<impl std::fmt::Debug>) -> (usize, usize) {
        match result {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rmap_round_trip() {
        let r = RMap::from_fn(2, 2, |t| vec![t[1], t[0]]).unwrap();
        let text = write_rmap(&r);
        assert_eq!(text, "simplex-rmap v1\nn=2 m=2\n0 0 -> 0 0\n0 1 -> 1 0\n1 0 -> 0 1\n1 1 -> 1 1\n");
        assert_eq!(parse_rmap(&text).unwrap(), r);
    }

    #[test]
    fn rmap_errors_locate_the_problem() {
        let good = "simplex-rmap v1\nn=2 m=2\n0 0 -> 0 0\n0 1 -> 1 0\n1 0 -> 0 1\n1 1 -> 1 1\n";
        assert_eq!(parse_err(parse_rmap(&good.replace("v1", "v2"))), (1, 1));
        assert_eq!(parse_err(parse_rmap(&good.replace("m=2", "m=x"))), (2, 7));
        assert_eq!(parse_err(parse_rmap(&good.replace("0 1 -> 1 0", "0 1 -> 1 7"))), (4, 10));
        assert_eq!(parse_err(parse_rmap(&good.replace("1 0 -> 0 1", "1 1 -> 0 1"))), (5, 3));
        assert_eq!(parse_err(parse_rmap(&good.replace("1 1 -> 1 1\n", ""))), (6, 1));
        assert_eq!(parse_err(parse_rmap(&format!("{good}0 0 -> 0 0\n"))), (7, 1));
        assert_eq!(parse_err(parse_rmap(&good.replace("0 0 -> 0 0", "0 0 0 0"))), (3, 8));
    }

    #[test]
    fn cocycle_and_potential_round_trip() {
        let phi = Cocycle::from_fn(2, 5, |a, b, c| (a + 2 * b + 3 * c) as u64).unwrap();
        assert_eq!(parse_cocycle(&write_cocycle(&phi)).unwrap(), phi);
        let psi = Potential::new(7, vec![3, 0, 6]).unwrap();
        assert_eq!(parse_potential(&write_potential(&psi)).unwrap(), psi);
        let text = write_cocycle(&phi).replace("1 1 1 -> 1", "1 1 1 -> 9");
        assert_eq!(parse_err(parse_cocycle(&text)), (10, 10));
    }

    #[test]
    fn matrix_and_operator_round_trip() {
        let m = SparseMatrix::from_triples(3, 2, &[(0, 1, -4), (2, 0, 7)]).unwrap();
        assert_eq!(write_matrix(&m), "3 2 2\n2 0 7\n0 1 -4\n");
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        assert_eq!(parse_err(parse_matrix("2 2 1\n0 5 1\n")), (2, 3));
        let op = MonomialOperator::new(2, 2, 4, vec![1, 0, 3, 2], vec![0, 1, 2, 3]).unwrap();
        assert_eq!(parse_operator(&write_operator(&op)).unwrap(), op);
    }
}
