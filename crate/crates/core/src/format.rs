//! Plain-text cube format.
//!
//! ```text
//! 2
//! 1 2
//! 3 4
//!
//! 4 3
//! 2 1
//! ```
//!
//! Line 1 holds the order `n`. Then follow `n` blocks, one per `z = 0..n`,
//! separated by blank lines. Row `r` of a block lists the cells
//! `(x = r, y = 0..n, z)`. Symbols are written 1-based.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cube::{cell_index, CubeArray};

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

pub fn to_text(cube: &CubeArray) -> String {
    let n = cube.order();
    let mut out = String::with_capacity(n * n * n * 4 + 8);
    writeln!(out, "{n}").unwrap();
    for z in 0..n {
        if z > 0 {
            out.push('\n');
        }
        for x in 0..n {
            for y in 0..n {
                if y > 0 {
                    out.push(' ');
                }
                write!(out, "{}", cube.cell(x, y, z).0 + 1).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// Parses the text format. Symbols must lie in `1..=n²`; the rainbow property
/// is not checked here.
pub fn parse(text: &str) -> Result<CubeArray, ParseError> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l));

    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| ParseError::new(1, 1, "empty input; expected the cube order"))?;
    let header_col = first_token_column(header);
    let n: usize = header.trim().parse().map_err(|_| {
        ParseError::new(
            header_no,
            header_col,
            format!(
                "expected a positive integer order, found {:?}",
                header.trim()
            ),
        )
    })?;
    if n == 0 {
        return Err(ParseError::new(
            header_no,
            header_col,
            "cube order must be positive",
        ));
    }
    let max_symbol = n
        .checked_mul(n)
        .filter(|_| n <= 1 << 10)
        .ok_or_else(|| ParseError::new(header_no, header_col, format!("order {n} is too large")))?;

    let mut cells = vec![0u32; n * n * n];
    let mut z = 0;
    let mut row = 0;
    let mut last_line = header_no;
    let mut saw_blank = true;
    for (line_no, line) in lines {
        last_line = line_no;
        if line.trim().is_empty() {
            if row != 0 {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("block z = {} has {row} rows, expected {n}", z),
                ));
            }
            saw_blank = true;
            continue;
        }
        if z == n {
            return Err(ParseError::new(
                line_no,
                first_token_column(line),
                format!("unexpected data after {n} blocks"),
            ));
        }
        if row == 0 && z > 0 && !saw_blank {
            return Err(ParseError::new(
                line_no,
                1,
                format!("missing blank line before block z = {z}"),
            ));
        }
        saw_blank = false;

        let mut count = 0;
        for (col, token) in tokens(line) {
            if count == n {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("row has more than {n} entries"),
                ));
            }
            let value: usize = token.parse().map_err(|_| {
                ParseError::new(
                    line_no,
                    col,
                    format!("expected an integer, found {token:?}"),
                )
            })?;
            if value == 0 || value > max_symbol {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("symbol {value} out of range 1..={max_symbol}"),
                ));
            }
            cells[cell_index(n, row, count, z)] = (value - 1) as u32;
            count += 1;
        }
        if count < n {
            return Err(ParseError::new(
                line_no,
                line.len() + 1,
                format!("row has {count} entries, expected {n}"),
            ));
        }
        row += 1;
        if row == n {
            row = 0;
            z += 1;
        }
    }
    if z < n {
        return Err(ParseError::new(
            last_line,
            1,
            format!("input ended inside block z = {z} (row {row}); expected {n} blocks"),
        ));
    }
    Ok(CubeArray::new(n, cells).expect("shape and range checked while parsing"))
}

fn first_token_column(line: &str) -> usize {
    line.len() - line.trim_start().len() + 1
}

/// Whitespace-separated tokens with their 1-based byte columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        let col = offset + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, tok))
    })
}

/// Adapter so a cube can be written with `{}`.
pub struct Text<'a>(pub &'a CubeArray);

impl fmt::Display for Text<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{base_cube, verify};

    const SAMPLE_ORDER2: &str = "2\n1 2\n3 4\n\n4 3\n2 1\n";

    #[test]
    fn parses_order_two_example() {
        let c = parse(SAMPLE_ORDER2).unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!(c.cell(0, 0, 0).0, 0);
        assert_eq!(c.cell(1, 0, 0).0, 2);
        assert_eq!(c.cell(0, 1, 1).0, 2);
        assert!(verify(&c).is_valid());
        assert_eq!(to_text(&c), SAMPLE_ORDER2);
    }

    #[test]
    fn serializes_base_cube() {
        let text = to_text(base_cube(2).unwrap().as_array());
        assert_eq!(text, "2\n1 2\n3 4\n\n4 3\n2 1\n");
    }

    #[test]
    fn tolerates_crlf_and_trailing_blank_lines() {
        let text = SAMPLE_ORDER2.replace('\n', "\r\n") + "\r\n\r\n";
        assert_eq!(parse(&text).unwrap(), parse(SAMPLE_ORDER2).unwrap());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse("2\n1 2\n3 5\n\n4 3\n2 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        assert!(e.message.contains("out of range"));

        let e = parse("2\n1 2\n3\n\n4 3\n2 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("1 entries"));

        let e = parse("2\n1 2 3\n3 4\n\n4 3\n2 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));

        let e = parse("2\n1 2\n3 4\n4 3\n2 1\n").unwrap_err();
        assert!(e.message.contains("missing blank line"));

        let e = parse("2\n1 2\n3 4\n").unwrap_err();
        assert!(e.message.contains("ended inside block"));

        let e = parse("2\n1 2\n\n3 4\n4 3\n2 1\n").unwrap_err();
        assert_eq!(e.line, 3);

        let e = parse("x\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));

        let e = parse("1\n1\n\n1\n").unwrap_err();
        assert!(e.message.contains("after 1 blocks"));

        let e = parse("2\n1 a\n3 4\n\n4 3\n2 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }
}
