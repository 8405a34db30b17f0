//! Text input: matrices (`m n` header, then `m` rows of `n` integers),
//! vectors (one line of integers) and their inline flag forms.

use std::fmt;

use num_bigint::BigInt;

use crate::linalg::{IntMatrix, IntVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}",
            self.source, self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn err(source: &str, line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        source: source.to_string(),
        line,
        column,
        message: message.into(),
    }
}

fn parse_ints(source: &str, line_no: usize, line: &str) -> Result<Vec<BigInt>, ParseError> {
    tokens(line)
        .into_iter()
        .map(|t| {
            t.text
                .parse::<BigInt>()
                .map_err(|_| err(source, line_no, t.column, format!("`{}` is not an integer", t.text)))
        })
        .collect()
}

/// Numbered, non-blank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

pub fn parse_matrix(source: &str, text: &str) -> Result<IntMatrix, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return Err(err(source, 1, 1, "empty input, expected `rows cols` header"));
    };
    let dims = tokens(header);
    if dims.len() != 2 {
        return Err(err(source, hl, 1, "header must be `rows cols`"));
    }
    let mut parsed = [0usize; 2];
    for (slot, t) in parsed.iter_mut().zip(&dims) {
        *slot = t
            .text
            .parse()
            .map_err(|_| err(source, hl, t.column, format!("`{}` is not a dimension", t.text)))?;
    }
    let [rows, cols] = parsed;
    let mut data = Vec::with_capacity(rows * cols);
    let mut last_line = hl;
    for r in 0..rows {
        let Some((ln, line)) = lines.next() else {
            return Err(err(
                source,
                last_line + 1,
                1,
                format!("expected {rows} rows, found {r}"),
            ));
        };
        last_line = ln;
        let row = parse_ints(source, ln, line)?;
        if row.len() != cols {
            let col = tokens(line).get(cols).map_or(line.chars().count() + 1, |t| t.column);
            return Err(err(
                source,
                ln,
                col,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        data.extend(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(source, ln, 1, format!("unexpected content after {rows} rows")));
    }
    Ok(IntMatrix::from_data(rows, cols, data).expect("shape checked"))
}

pub fn parse_vector(source: &str, text: &str) -> Result<IntVector, ParseError> {
    let mut lines = content_lines(text);
    let Some((ln, line)) = lines.next() else {
        return Err(err(source, 1, 1, "empty input, expected one line of integers"));
    };
    let v = parse_ints(source, ln, line)?;
    if let Some((extra, _)) = lines.next() {
        return Err(err(source, extra, 1, "vector must be a single line"));
    }
    Ok(v)
}

/// Inline matrix: rows separated by `;`, entries by whitespace.
pub fn parse_inline_matrix(source: &str, text: &str) -> Result<IntMatrix, ParseError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, chunk) in text.split(';').enumerate() {
        let row = parse_ints(source, i + 1, chunk)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(err(
                    source,
                    i + 1,
                    1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    let cols = rows.first().map_or(0, |r| r.len());
    if cols == 0 {
        return Err(err(source, 1, 1, "matrix has no entries"));
    }
    let n_rows = rows.len();
    IntMatrix::from_data(n_rows, cols, rows.into_iter().flatten().collect())
        .map_err(|e| err(source, 1, 1, e.to_string()))
}

pub fn parse_inline_vector(source: &str, text: &str) -> Result<IntVector, ParseError> {
    parse_ints(source, 1, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;

    #[test]
    fn matrix_file() {
        let m = parse_matrix("a.txt", "2 3\n1 0 -1\n0 1 -1\n").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[&[1, 0, -1], &[0, 1, -1]]));
    }

    #[test]
    fn matrix_errors_name_position() {
        let e = parse_matrix("a.txt", "2 3\n1 0 -1\n0 x -1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        assert_eq!(e.to_string(), "a.txt:3:3: `x` is not an integer");

        let e = parse_matrix("a.txt", "2 3\n1 0 -1\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);

        let e = parse_matrix("a.txt", "2 2\n1 0\n").unwrap_err();
        assert_eq!(e.line, 3);

        let e = parse_matrix("a.txt", "1 2\n1 0\n5 5\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("b", "1 -2  3\n").unwrap(), int_vector(&[1, -2, 3]));
        assert!(parse_vector("b", "1\n2\n").is_err());
        let big = parse_inline_vector("b", "123456789012345678901234567890").unwrap();
        assert_eq!(big[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn inline_matrix() {
        let m = parse_inline_matrix("--a", "1 0 -1; 0 1 -1").unwrap();
        assert_eq!(m.rows(), 2);
        let e = parse_inline_matrix("--a", "1 2; 3").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
