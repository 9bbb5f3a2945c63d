//! Text formats for matrices, density matrices, GF(2) matrices and CSV.
//!
//! - `.cmat`: line 1 is the dimension `d`, then `d` rows of `2d` floats with
//!   real and imaginary parts interleaved.
//! - `.dmat`: line 1 lists the subsystem dimensions, then a `.cmat` body.
//! - `.gf2`: line 1 is `m n`, then `m` rows of `n` characters from `{0, 1}`.
//!
//! `#` starts a comment; blank lines are ignored. Errors carry the 1-based
//! line number and, where relevant, the 1-based field.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use dqc1_core::qswe::{BitVec, Gf2Matrix};
use dqc1_core::{Complex64, ComplexMatrix, DensityMatrix};
use thiserror::Error;

/// Largest dimension accepted from a file.
pub const MAX_FILE_DIM: usize = 4096;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{location}: {message}")]
    Syntax { location: Location, message: String },
    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<FormatError>,
    },
}

/// Position of a syntax error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub field: Option<usize>,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.field {
            Some(field) => write!(f, "line {}, field {field}", self.line),
            None => write!(f, "line {}", self.line),
        }
    }
}

fn syntax(line: usize, field: Option<usize>, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        location: Location { line, field },
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn end_of_input(text: &str) -> usize {
    text.lines().count().max(1)
}

fn parse_dim(token: &str, line: usize, field: usize, what: &str) -> Result<usize, FormatError> {
    let d: usize = token.parse().map_err(|_| {
        syntax(
            line,
            Some(field),
            format!("{what} {token:?} is not a non-negative integer"),
        )
    })?;
    if d == 0 || d > MAX_FILE_DIM {
        return Err(syntax(
            line,
            Some(field),
            format!("{what} {d} outside 1..={MAX_FILE_DIM}"),
        ));
    }
    Ok(d)
}

fn parse_float(token: &str, line: usize, field: usize) -> Result<f64, FormatError> {
    let v: f64 = token
        .parse()
        .map_err(|_| syntax(line, Some(field), format!("{token:?} is not a number")))?;
    if !v.is_finite() {
        return Err(syntax(
            line,
            Some(field),
            format!("{token:?} is not finite"),
        ));
    }
    Ok(v)
}

fn parse_matrix_body<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    eof: usize,
) -> Result<ComplexMatrix, FormatError> {
    let (line, header) = lines
        .next()
        .ok_or_else(|| syntax(eof, None, "missing dimension line"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 1 {
        return Err(syntax(
            line,
            None,
            format!("expected a single dimension, found {} fields", tokens.len()),
        ));
    }
    let d = parse_dim(tokens[0], line, 1, "dimension")?;
    let mut data = Vec::with_capacity(d * d);
    for row in 0..d {
        let (line, text) = lines
            .next()
            .ok_or_else(|| syntax(eof, None, format!("expected {d} matrix rows, found {row}")))?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 * d {
            return Err(syntax(
                line,
                None,
                format!("expected {} fields, found {}", 2 * d, fields.len()),
            ));
        }
        for pair in 0..d {
            let re = parse_float(fields[2 * pair], line, 2 * pair + 1)?;
            let im = parse_float(fields[2 * pair + 1], line, 2 * pair + 2)?;
            data.push(Complex64::new(re, im));
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, None, "unexpected content after the matrix"));
    }
    Ok(ComplexMatrix::new(d, d, data).expect("row lengths checked"))
}

pub fn parse_cmat(text: &str) -> Result<ComplexMatrix, FormatError> {
    parse_matrix_body(&mut content_lines(text), end_of_input(text))
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}

pub fn write_cmat(m: &ComplexMatrix) -> String {
    assert!(m.is_square(), "only square matrices have a .cmat form");
    let mut out = format!("{}\n", m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .flat_map(|z| [format_float(z.re), format_float(z.im)])
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_dmat(text: &str) -> Result<DensityMatrix, FormatError> {
    let eof = end_of_input(text);
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| syntax(eof, None, "missing subsystem dimensions"))?;
    let dims = header
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| parse_dim(t, line, i + 1, "subsystem dimension"))
        .collect::<Result<Vec<_>, _>>()?;
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
    let m = parse_matrix_body(&mut lines, eof)?;
    if total != Some(m.rows()) {
        return Err(syntax(
            line,
            None,
            format!(
                "subsystem dimensions {dims:?} do not multiply to the matrix dimension {}",
                m.rows()
            ),
        ));
    }
    DensityMatrix::new(dims, m)
        .map_err(|e| syntax(line, None, format!("not a density matrix: {e}")))
}

pub fn write_dmat(rho: &DensityMatrix) -> String {
    let dims: Vec<String> = rho.dims().iter().map(usize::to_string).collect();
    format!("{}\n{}", dims.join(" "), write_cmat(rho.matrix()))
}

pub fn parse_gf2(text: &str) -> Result<Gf2Matrix, FormatError> {
    let eof = end_of_input(text);
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| syntax(eof, None, "missing \"m n\" line"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(syntax(
            line,
            None,
            format!("expected \"m n\", found {} fields", tokens.len()),
        ));
    }
    let m = parse_dim(tokens[0], line, 1, "row count")?;
    let n = parse_dim(tokens[1], line, 2, "column count")?;
    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let (line, text) = lines
            .next()
            .ok_or_else(|| syntax(eof, None, format!("expected {m} rows, found {r}")))?;
        let compact: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.len() != n {
            return Err(syntax(
                line,
                None,
                format!("expected {n} entries, found {}", compact.len()),
            ));
        }
        let mut v = BitVec::zeros(n);
        for (j, ch) in compact.iter().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(j, true),
                other => {
                    return Err(syntax(
                        line,
                        Some(j + 1),
                        format!("expected 0 or 1, found {other:?}"),
                    ))
                }
            }
        }
        rows.push(v);
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, None, "unexpected content after the matrix"));
    }
    Ok(Gf2Matrix::from_rows(rows, n).expect("row lengths checked"))
}

pub fn write_gf2(a: &Gf2Matrix) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        out.extend((0..a.cols()).map(|j| if a.get(i, j) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// Decimal with 17 significant digits, enough to recover any `f64`.
pub fn format_csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        assert_eq!(
            row.len(),
            header.len(),
            "CSV row width must match the header"
        );
        let fields: Vec<String> = row.iter().map(|&v| format_csv_float(v)).collect();
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

/// Header and numeric rows of a CSV produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| syntax(1, None, "missing header"))?;
    let header: Vec<String> = header.split(',').map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .enumerate()
            .map(|(j, t)| parse_float(t, i + 1, j + 1))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != header.len() {
            return Err(syntax(
                i + 1,
                None,
                format!("expected {} fields, found {}", header.len(), row.len()),
            ));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}

fn in_file<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, FormatError> {
    r.map_err(|e| FormatError::InFile {
        path: path.to_owned(),
        source: Box::new(e),
    })
}

pub fn read_cmat(path: &Path) -> Result<ComplexMatrix, FormatError> {
    in_file(path, parse_cmat(&read(path)?))
}

pub fn read_dmat(path: &Path) -> Result<DensityMatrix, FormatError> {
    in_file(path, parse_dmat(&read(path)?))
}

pub fn read_gf2(path: &Path) -> Result<Gf2Matrix, FormatError> {
    in_file(path, parse_gf2(&read(path)?))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), FormatError> {
    fs::write(path, contents).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}
