//! Plain-text matrix format shared by the library and the CLI.
//!
//! The first non-comment line holds the order `n`; the next `n` non-comment
//! lines hold `n` whitespace-separated values each. Anything from `#` to the
//! end of a line is a comment. Real values are plain decimal floats; complex
//! values are single tokens of the form `re{+|-}imi`, e.g. `0+1i`,
//! `-1.5-2.25i`. Writing uses the shortest decimal representation that
//! parses back to the identical bits, so write-parse round trips are exact.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use thiserror::Error;

use crate::complex::ComplexDenseMatrix;
use crate::matrix::DenseMatrix;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("missing order line")]
    MissingOrder,

    #[error("invalid order {0:?}")]
    BadOrder(String),

    #[error("line {line}: bad value {token:?}")]
    BadToken { line: usize, token: String },

    #[error("line {line}: expected {expected} values, found {found}")]
    WrongCount {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("file ends after {found} of {expected} matrix rows")]
    TooFewRows { found: usize, expected: usize },

    #[error("entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },
}

/// Yields `(line_number, payload)` for non-empty lines with comments removed.
fn content_lines(
    reader: impl BufRead,
) -> impl Iterator<Item = Result<(usize, String), std::io::Error>> {
    reader.lines().enumerate().filter_map(|(idx, line)| {
        match line {
            Err(e) => Some(Err(e)),
            Ok(text) => {
                let payload = match text.find('#') {
                    Some(pos) => &text[..pos],
                    None => &text[..],
                };
                let trimmed = payload.trim();
                if trimmed.is_empty() {
                    None
                } else {
                    Some(Ok((idx + 1, trimmed.to_string())))
                }
            }
        }
    })
}

fn parse_order(lines: &mut impl Iterator<Item = Result<(usize, String), std::io::Error>>)
    -> Result<usize, ParseError> {
    let (line, text) = match lines.next() {
        None => return Err(ParseError::MissingOrder),
        Some(r) => r?,
    };
    let _ = line;
    let n: usize = text
        .parse()
        .map_err(|_| ParseError::BadOrder(text.clone()))?;
    if n == 0 {
        return Err(ParseError::BadOrder(text));
    }
    Ok(n)
}

pub fn read_real_matrix(reader: impl BufRead) -> Result<DenseMatrix, ParseError> {
    let mut lines = content_lines(reader);
    let n = parse_order(&mut lines)?;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = match lines.next() {
            None => {
                return Err(ParseError::TooFewRows {
                    found: rows.len(),
                    expected: n,
                })
            }
            Some(r) => r?,
        };
        let mut row = Vec::with_capacity(n);
        for token in text.split_whitespace() {
            let value: f64 = token.parse().map_err(|_| ParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            row.push(value);
        }
        if row.len() != n {
            return Err(ParseError::WrongCount {
                line,
                expected: n,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(ParseError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(DenseMatrix::from_rows(&rows).expect("validated above"))
}

pub fn write_real_matrix(mut writer: impl Write, m: &DenseMatrix) -> std::io::Result<()> {
    let n = m.n();
    writeln!(writer, "{n}")?;
    for i in 0..n {
        let mut first = true;
        for j in 0..n {
            if !first {
                write!(writer, " ")?;
            }
            write!(writer, "{}", m.get(i, j))?;
            first = false;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// Splits `re{+|-}imi` at the sign that separates the parts (signs inside
/// exponents do not count). Tokens without a trailing `i` parse as reals.
fn parse_complex_token(token: &str) -> Option<Complex64> {
    if !token.ends_with('i') && !token.ends_with('I') {
        let re: f64 = token.parse().ok()?;
        return Some(Complex64::new(re, 0.0));
    }
    let body = &token[..token.len() - 1];
    let bytes = body.as_bytes();
    let mut split = None;
    for pos in 1..bytes.len() {
        let b = bytes[pos];
        if (b == b'+' || b == b'-') && bytes[pos - 1] != b'e' && bytes[pos - 1] != b'E' {
            split = Some(pos);
        }
    }
    let pos = split?;
    let re: f64 = body[..pos].parse().ok()?;
    let im: f64 = body[pos..].parse().ok()?;
    Some(Complex64::new(re, im))
}

pub fn read_complex_matrix(reader: impl BufRead) -> Result<ComplexDenseMatrix, ParseError> {
    let mut lines = content_lines(reader);
    let n = parse_order(&mut lines)?;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = match lines.next() {
            None => {
                return Err(ParseError::TooFewRows {
                    found: rows.len(),
                    expected: n,
                })
            }
            Some(r) => r?,
        };
        let mut row = Vec::with_capacity(n);
        for token in text.split_whitespace() {
            let value = parse_complex_token(token).ok_or_else(|| ParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            row.push(value);
        }
        if row.len() != n {
            return Err(ParseError::WrongCount {
                line,
                expected: n,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(ParseError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(ComplexDenseMatrix::from_rows(&rows).expect("validated above"))
}

pub fn write_complex_matrix(
    mut writer: impl Write,
    m: &ComplexDenseMatrix,
) -> std::io::Result<()> {
    let n = m.n();
    writeln!(writer, "{n}")?;
    for i in 0..n {
        let mut first = true;
        for j in 0..n {
            if !first {
                write!(writer, " ")?;
            }
            let z = m.get(i, j);
            write!(writer, "{}{:+}i", z.re, z.im)?;
            first = false;
        }
        writeln!(writer)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_roundtrip_is_bit_identical() {
        let m = DenseMatrix::from_rows(&[
            vec![0.0, 1.0 / 3.0, -2.25e-13],
            vec![-1.0 / 3.0, 0.0, 7.0],
            vec![2.25e-13, -7.0, 0.0],
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_real_matrix(&mut buf, &m).unwrap();
        let back = read_real_matrix(buf.as_slice()).unwrap();
        assert_eq!(back, m);
        // A second write produces the identical file: the canonical form is
        // a fixed point.
        let mut buf2 = Vec::new();
        write_real_matrix(&mut buf2, &back).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# order\n2\n\n0 1 # first row\n-1 0\n";
        let m = read_real_matrix(text.as_bytes()).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(1, 0), -1.0);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            read_real_matrix("".as_bytes()),
            Err(ParseError::MissingOrder)
        ));
        assert!(matches!(
            read_real_matrix("x\n".as_bytes()),
            Err(ParseError::BadOrder(_))
        ));
        assert!(matches!(
            read_real_matrix("2\n0 1\n".as_bytes()),
            Err(ParseError::TooFewRows {
                found: 1,
                expected: 2
            })
        ));
        assert!(matches!(
            read_real_matrix("2\n0 1 2\n-1 0\n".as_bytes()),
            Err(ParseError::WrongCount { line: 2, .. })
        ));
        assert!(matches!(
            read_real_matrix("1\nbad\n".as_bytes()),
            Err(ParseError::BadToken { line: 2, .. })
        ));
        assert!(matches!(
            read_real_matrix("1\ninf\n".as_bytes()),
            Err(ParseError::NonFinite { .. })
        ));
    }

    #[test]
    fn complex_tokens() {
        assert_eq!(
            parse_complex_token("0+1i"),
            Some(Complex64::new(0.0, 1.0))
        );
        assert_eq!(
            parse_complex_token("-1.5-2i"),
            Some(Complex64::new(-1.5, -2.0))
        );
        assert_eq!(
            parse_complex_token("1e+3+4e-5i"),
            Some(Complex64::new(1000.0, 4e-5))
        );
        assert_eq!(
            parse_complex_token("2.5"),
            Some(Complex64::new(2.5, 0.0))
        );
        assert_eq!(parse_complex_token("2i"), None);
        assert_eq!(parse_complex_token(""), None);
    }

    #[test]
    fn complex_roundtrip() {
        let m = ComplexDenseMatrix::from_rows(&[
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.5, -0.125)],
            vec![Complex64::new(-0.5, -0.125), Complex64::new(0.0, -1.0)],
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_complex_matrix(&mut buf, &m).unwrap();
        let back = read_complex_matrix(buf.as_slice()).unwrap();
        assert_eq!(back, m);
    }
}
