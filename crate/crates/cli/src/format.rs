//! Line-oriented text formats for pencils and modules.
//!
//! `#` starts a comment, blank lines are ignored, and every parse error
//! carries the 1-based line number it occurred on.  Entries outside
//! `[0, p)` are reduced modulo p and reported as warnings instead of being
//! rejected, so hand-edited fixtures stay usable.

use std::fmt;

use rankforge_core::{Matrix, Modulus, Pencil, SModule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// A parsed value plus any reduction warnings encountered on the way.
#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if !content.is_empty() {
                lines.push((i + 1, content));
            }
        }
        Cursor { lines, pos: 0, last_line }
    }

    fn next(&mut self) -> Result<(usize, &'a str), ParseError> {
        if self.pos >= self.lines.len() {
            return Err(ParseError {
                line: self.last_line + 1,
                message: "unexpected end of file".into(),
            });
        }
        let item = self.lines[self.pos];
        self.pos += 1;
        Ok(item)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos < self.lines.len() {
            let (line, content) = self.lines[self.pos];
            return Err(ParseError { line, message: format!("unexpected trailing content: {content}") });
        }
        Ok(())
    }
}

fn fail(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn expect_literal(cursor: &mut Cursor<'_>, literal: &str) -> Result<(), ParseError> {
    let (line, content) = cursor.next()?;
    if content != literal {
        return Err(fail(line, format!("expected `{literal}`, found `{content}`")));
    }
    Ok(())
}

fn expect_fields<const N: usize>(
    cursor: &mut Cursor<'_>,
    keyword: &str,
) -> Result<(usize, [u64; N]), ParseError> {
    let (line, content) = cursor.next()?;
    let mut parts = content.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(fail(line, format!("expected `{keyword} ...`, found `{content}`")));
    }
    let mut out = [0u64; N];
    for slot in &mut out {
        let token = parts
            .next()
            .ok_or_else(|| fail(line, format!("`{keyword}` needs {N} integer argument(s)")))?;
        *slot = token
            .parse()
            .map_err(|_| fail(line, format!("`{token}` is not a non-negative integer")))?;
    }
    if parts.next().is_some() {
        return Err(fail(line, format!("too many arguments for `{keyword}`")));
    }
    Ok((line, out))
}

fn parse_field(cursor: &mut Cursor<'_>) -> Result<Modulus, ParseError> {
    let (line, [p]) = expect_fields::<1>(cursor, "field")?;
    Modulus::new(p).map_err(|_| fail(line, format!("{p} is not a prime in the supported range")))
}

fn parse_matrix_block(
    cursor: &mut Cursor<'_>,
    expected_index: usize,
    rows: usize,
    cols: usize,
    modulus: Modulus,
    warnings: &mut Vec<String>,
) -> Result<Matrix, ParseError> {
    let (line, [index]) = expect_fields::<1>(cursor, "matrix")?;
    if index != expected_index as u64 {
        return Err(fail(line, format!("expected `matrix {expected_index}`, found index {index}")));
    }
    let mut values = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, content) = cursor.next()?;
        let entries: Vec<&str> = content.split_whitespace().collect();
        if entries.len() != cols {
            return Err(fail(line, format!("expected {cols} entries, found {}", entries.len())));
        }
        for token in entries {
            let value: u64 = token
                .parse()
                .map_err(|_| fail(line, format!("`{token}` is not a non-negative integer")))?;
            if value >= modulus.get() {
                warnings.push(format!("line {line}: entry {value} reduced modulo {modulus}"));
            }
            values.push(value);
        }
    }
    Ok(Matrix::from_values(rows, cols, &values, modulus))
}

pub fn parse_pencil(text: &str) -> Result<Parsed<Pencil>, ParseError> {
    let mut cursor = Cursor::new(text);
    let mut warnings = Vec::new();
    expect_literal(&mut cursor, "pencil")?;
    let modulus = parse_field(&mut cursor)?;
    let (dims_line, [rows, cols]) = expect_fields::<2>(&mut cursor, "dims")?;
    if rows == 0 || cols == 0 {
        return Err(fail(dims_line, "dimensions must be positive"));
    }
    let (_, [vars]) = expect_fields::<1>(&mut cursor, "vars")?;
    let mut coefficients = Vec::with_capacity(vars as usize + 1);
    for index in 0..=vars as usize {
        coefficients.push(parse_matrix_block(
            &mut cursor,
            index,
            rows as usize,
            cols as usize,
            modulus,
            &mut warnings,
        )?);
    }
    cursor.expect_end()?;
    Ok(Parsed { value: Pencil::new(coefficients), warnings })
}

pub fn parse_module(text: &str) -> Result<Parsed<SModule>, ParseError> {
    let mut cursor = Cursor::new(text);
    let mut warnings = Vec::new();
    expect_literal(&mut cursor, "module")?;
    let modulus = parse_field(&mut cursor)?;
    let (_, [dim]) = expect_fields::<1>(&mut cursor, "dim")?;
    let (_, [gens]) = expect_fields::<1>(&mut cursor, "gens")?;
    let mut actions = Vec::with_capacity(gens as usize);
    for index in 0..gens as usize {
        actions.push(parse_matrix_block(
            &mut cursor,
            index,
            dim as usize,
            dim as usize,
            modulus,
            &mut warnings,
        )?);
    }
    cursor.expect_end()?;
    Ok(Parsed { value: SModule::new(dim as usize, actions, modulus), warnings })
}

fn push_matrix(out: &mut String, index: usize, m: &Matrix) {
    out.push_str(&format!("matrix {index}\n"));
    out.push_str(&m.to_string());
}

#[allow(dead_code)] // exercised by the round-trip tests
pub fn serialize_pencil(p: &Pencil) -> String {
    let mut out = String::new();
    out.push_str("pencil\n");
    out.push_str(&format!("field {}\n", p.modulus()));
    out.push_str(&format!("dims {} {}\n", p.rows(), p.cols()));
    out.push_str(&format!("vars {}\n", p.n_vars()));
    for (i, m) in p.coefficients().iter().enumerate() {
        push_matrix(&mut out, i, m);
    }
    out
}

pub fn serialize_module(m: &SModule) -> String {
    let mut out = String::new();
    out.push_str("module\n");
    out.push_str(&format!("field {}\n", m.modulus()));
    out.push_str(&format!("dim {}\n", m.dim()));
    out.push_str(&format!("gens {}\n", m.action_count()));
    for (i, a) in m.actions().iter().enumerate() {
        push_matrix(&mut out, i, a);
    }
    out
}

/// Parses a comma-separated vector of field values, reducing out-of-range
/// entries with a warning.
pub fn parse_vector_arg(
    text: &str,
    modulus: Modulus,
    warnings: &mut Vec<String>,
) -> Result<Vec<rankforge_core::Scalar>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|token| {
            let token = token.trim();
            let value: u64 =
                token.parse().map_err(|_| format!("`{token}` is not a non-negative integer"))?;
            if value >= modulus.get() {
                warnings.push(format!("argument entry {value} reduced modulo {modulus}"));
            }
            Ok(modulus.scalar(value))
        })
        .collect()
}
