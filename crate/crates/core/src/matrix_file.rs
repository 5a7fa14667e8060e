//! Text format for generator matrices.
//!
//! One row per line, binary tokens then a literal `|` then ring tokens:
//!
//! ```text
//! # comment
//! 1 1 1 0 0 0 1 | u
//! 0 0 0 1 1 1 1 | u
//! ```
//!
//! The `|` is mandatory even when one side is empty. All rows must agree on
//! the number of tokens on each side.

use crate::code::{AmbientShape, MixedVector};
use crate::error::{Error, Result};
use crate::ring::RingElem;

/// A parsed generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub shape: AmbientShape,
    pub rows: Vec<MixedVector>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(1-based column, token)` pairs, treating `|` as its
/// own token even without surrounding whitespace.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() || ch == '|' {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
            if ch == '|' {
                out.push((i + 1, "|"));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<GeneratorMatrix> {
    let mut raw: Vec<(usize, Vec<u8>, Vec<RingElem>)> = Vec::new();
    let mut dims: Option<(usize, usize, usize)> = None;

    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = full_line.split('#').next().unwrap_or("");
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let bars: Vec<usize> = toks
            .iter()
            .enumerate()
            .filter(|(_, (_, t))| *t == "|")
            .map(|(i, _)| i)
            .collect();
        let bar = match bars.as_slice() {
            [b] => *b,
            [] => return Err(parse_error(line_no, 1, "missing `|` separator")),
            [_, second, ..] => {
                return Err(parse_error(line_no, toks[*second].0, "more than one `|` separator"))
            }
        };

        let mut bin = Vec::with_capacity(bar);
        for &(col, t) in &toks[..bar] {
            match t {
                "0" => bin.push(0),
                "1" => bin.push(1),
                _ => return Err(parse_error(line_no, col, format!("expected binary token 0 or 1, found `{t}`"))),
            }
        }
        let mut ring = Vec::with_capacity(toks.len() - bar - 1);
        for &(col, t) in &toks[bar + 1..] {
            let r = t
                .parse::<RingElem>()
                .map_err(|_| parse_error(line_no, col, format!("expected ring token (0, 1, u, v, 1+u, u+1), found `{t}`")))?;
            ring.push(r);
        }

        match dims {
            None => dims = Some((bin.len(), ring.len(), line_no)),
            Some((a, b, first)) if (a, b) != (bin.len(), ring.len()) => {
                return Err(parse_error(
                    line_no,
                    1,
                    format!(
                        "row has {} binary and {} ring entries but line {first} has {a} and {b}",
                        bin.len(),
                        ring.len()
                    ),
                ))
            }
            Some(_) => {}
        }
        raw.push((line_no, bin, ring));
    }

    let (alpha, beta, first) = dims.ok_or_else(|| parse_error(1, 1, "no matrix rows found"))?;
    let shape = AmbientShape::new(alpha, beta).map_err(|e| parse_error(first, 1, e.to_string()))?;
    let rows = raw
        .into_iter()
        .map(|(line_no, bin, ring)| MixedVector::new(shape, &bin, &ring).map_err(|e| parse_error(line_no, 1, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorMatrix { shape, rows })
}

/// Renders rows in the file syntax, one per line.
pub fn format_matrix(rows: &[MixedVector]) -> String {
    rows.iter().map(|r| format!("{r}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_rows() {
        let m = parse_matrix("# ex\n1 1 0 | u v\n\n0 1 1 | 1+u u+1  # tail\n").unwrap();
        assert_eq!(m.shape, AmbientShape::new(3, 2).unwrap());
        assert_eq!(m.rows.len(), 2);
        assert_eq!(m.rows[1].ring(0), RingElem::V);
        assert_eq!(m.rows[1].ring(1), RingElem::V);
    }

    #[test]
    fn empty_sides() {
        let m = parse_matrix("| u\n| 1\n").unwrap();
        assert_eq!((m.shape.alpha(), m.shape.beta()), (0, 1));
        let m = parse_matrix("1 1 |\n").unwrap();
        assert_eq!((m.shape.alpha(), m.shape.beta()), (2, 0));
        let m = parse_matrix("1 0|u").unwrap();
        assert_eq!((m.shape.alpha(), m.shape.beta()), (2, 1));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = parse_matrix("1 0 | u\n1 | u\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_tokens_cite_position() {
        match parse_matrix("1 0 | u\n1 2 | u\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_matrix("1 0 | w\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 7)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_matrix("1 0 u\n").is_err());
        assert!(parse_matrix("1 | 0 | u\n").is_err());
        assert!(parse_matrix("# only comments\n").is_err());
        assert!(parse_matrix("|\n").is_err());
    }

    #[test]
    fn format_then_parse() {
        let text = "1 1 1 0 0 0 1 | u\n0 0 0 1 1 1 1 | u\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(format_matrix(&m.rows), text);
        assert_eq!(format_matrix(&parse_matrix("| u v\n").unwrap().rows), "| u v\n");
        assert_eq!(format_matrix(&parse_matrix("1 0 |\n").unwrap().rows), "1 0 |\n");
    }
}
