//! DIMACS CNF reading and writing.
//!
//! Input may use LF or CRLF line endings; output always uses LF. A clause
//! count that disagrees with the header is a warning, not an error.

use std::fmt::{self, Write as _};

use thiserror::Error;

use super::{Clause, Cnf, Literal};

/// Where and why a DIMACS text was rejected. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub column: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsErrorKind {
    MalformedHeader(String),
    DuplicateHeader,
    MissingHeader,
    InvalidToken(String),
    ZeroVariable,
    VarOutOfRange { var: u64, n: u32 },
    UnterminatedClause,
}

impl fmt::Display for DimacsErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsErrorKind::MalformedHeader(why) => write!(f, "malformed header: {why}"),
            DimacsErrorKind::DuplicateHeader => write!(f, "second problem line"),
            DimacsErrorKind::MissingHeader => write!(f, "missing `p cnf` header"),
            DimacsErrorKind::InvalidToken(tok) => write!(f, "expected an integer, found {tok:?}"),
            DimacsErrorKind::ZeroVariable => write!(f, "variable index 0"),
            DimacsErrorKind::VarOutOfRange { var, n } => {
                write!(f, "variable {var} exceeds declared count {n}")
            }
            DimacsErrorKind::UnterminatedClause => write!(f, "clause not terminated by 0"),
        }
    }
}

/// Parses DIMACS text, logging any warnings.
pub fn parse_dimacs(text: &str) -> Result<Cnf, DimacsError> {
    let (cnf, warnings) = parse_dimacs_with_warnings(text)?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(cnf)
}

/// Tokens of one line with their 1-based starting columns.
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

/// Parses DIMACS text and returns the non-fatal warnings alongside.
pub fn parse_dimacs_with_warnings(text: &str) -> Result<(Cnf, Vec<String>), DimacsError> {
    let mut header: Option<(u32, u64)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open_at: Option<(usize, usize)> = None;
    let mut last_pos = (1, 1);

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let body = line.trim_start();
        let err = |column: usize, kind| DimacsError {
            line: line_no,
            column,
            kind,
        };
        if body.starts_with('c') || body.is_empty() {
            continue;
        }
        // SATLIB trailer
        if body.starts_with('%') {
            break;
        }
        if body.starts_with('p') {
            let col = line.len() - body.len() + 1;
            if header.is_some() {
                return Err(err(col, DimacsErrorKind::DuplicateHeader));
            }
            header = Some(
                parse_header(line)
                    .map_err(|(c, why)| err(c, DimacsErrorKind::MalformedHeader(why)))?,
            );
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(
                line.len() - body.len() + 1,
                DimacsErrorKind::MissingHeader,
            ));
        };
        for (col, tok) in tokens(line) {
            last_pos = (line_no, col + tok.len());
            let value: i64 = tok
                .parse()
                .map_err(|_| err(col, DimacsErrorKind::InvalidToken(tok.to_string())))?;
            if value == 0 {
                if tok.starts_with('-') {
                    return Err(err(col, DimacsErrorKind::ZeroVariable));
                }
                clauses.push(Clause::new(current.drain(..)));
                open_at = None;
                continue;
            }
            let var = value.unsigned_abs();
            if var > u64::from(n) {
                return Err(err(col, DimacsErrorKind::VarOutOfRange { var, n }));
            }
            open_at.get_or_insert((line_no, col));
            current.push(Literal::new(var as u32, value > 0));
        }
    }

    let Some((n, declared)) = header else {
        return Err(DimacsError {
            line: last_pos.0,
            column: 1,
            kind: DimacsErrorKind::MissingHeader,
        });
    };
    if let Some((line, column)) = open_at {
        return Err(DimacsError {
            line,
            column,
            kind: DimacsErrorKind::UnterminatedClause,
        });
    }
    let mut warnings = Vec::new();
    if clauses.len() as u64 != declared {
        warnings.push(format!(
            "header declares {declared} clauses but {} were read",
            clauses.len()
        ));
    }
    let cnf = Cnf::new(n, clauses).expect("variables were range-checked while parsing");
    Ok((cnf, warnings))
}

fn parse_header(line: &str) -> Result<(u32, u64), (usize, String)> {
    let toks: Vec<(usize, &str)> = tokens(line).collect();
    let col_at = |i: usize| toks.get(i).map_or(line.len() + 1, |t| t.0);
    if toks.first().map(|t| t.1) != Some("p") {
        return Err((col_at(0), "expected `p`".into()));
    }
    if toks.get(1).map(|t| t.1) != Some("cnf") {
        return Err((col_at(1), "expected format `cnf`".into()));
    }
    let n = toks
        .get(2)
        .and_then(|t| t.1.parse::<u32>().ok())
        .ok_or_else(|| (col_at(2), "expected variable count".to_string()))?;
    let m = toks
        .get(3)
        .and_then(|t| t.1.parse::<u64>().ok())
        .ok_or_else(|| (col_at(3), "expected clause count".to_string()))?;
    if toks.len() > 4 {
        return Err((col_at(4), "trailing tokens".into()));
    }
    Ok((n, m))
}

/// Renders a problem as DIMACS text with one 0-terminated clause per line.
pub fn write_dimacs(f: &Cnf) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    for c in f.clauses() {
        for l in c.literals() {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{five_clause_example, random_ksat};

    const FIVE: &str = "c five clauses, three variables\n\
                        p cnf 3 5\n\
                        1 -2 0\n2 3 0\n-1 -3 0\n-1 -2 3 0\n1 2 -3 0\n";

    #[test]
    fn parses_five_clause_example() {
        let f = parse_dimacs(FIVE).unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.num_clauses(), 5);
        assert_eq!(f, five_clause_example());
    }

    #[test]
    fn parses_trivial_inputs() {
        let f = parse_dimacs("p cnf 1 0").unwrap();
        assert_eq!(f.num_vars(), 1);
        assert!(f.is_clause_free());

        let f = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap();
        assert_eq!(f, Cnf::from_dimacs(2, &[&[1, -2]]).unwrap());
    }

    #[test]
    fn crlf_and_multiline_clauses() {
        let f = parse_dimacs("p cnf 3 2\r\n1 2\r\n 3 0 -1\r\n0\r\n").unwrap();
        assert_eq!(f, Cnf::from_dimacs(3, &[&[1, 2, 3], &[-1]]).unwrap());
    }

    #[test]
    fn count_mismatch_is_a_warning() {
        let (f, w) = parse_dimacs_with_warnings("p cnf 2 3\n1 0\n").unwrap();
        assert_eq!(f.num_clauses(), 1);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn duplicate_literals_are_dropped() {
        let f = parse_dimacs("p cnf 2 1\n1 1 -2 0\n").unwrap();
        assert_eq!(f.clauses()[0].len(), 2);
    }

    #[test]
    fn error_positions() {
        let e = parse_dimacs("p cnf x 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(matches!(e.kind, DimacsErrorKind::MalformedHeader(_)));

        let e = parse_dimacs("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(e.kind, DimacsErrorKind::VarOutOfRange { var: 3, n: 2 });

        let e = parse_dimacs("p cnf 2 1\n1 a 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(matches!(e.kind, DimacsErrorKind::InvalidToken(_)));

        let e = parse_dimacs("p cnf 2 1\n1 -0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::ZeroVariable);

        let e = parse_dimacs("p cnf 2 1\n1 2 0\n  -1 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        assert_eq!(e.kind, DimacsErrorKind::UnterminatedClause);

        let e = parse_dimacs("1 2 0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::MissingHeader);

        let e = parse_dimacs("c nothing\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::MissingHeader);

        let e = parse_dimacs("p cnf 2 1\np cnf 2 1\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::DuplicateHeader);
    }

    #[test]
    fn writes_expected_text() {
        assert_eq!(write_dimacs(&Cnf::tautology(1)), "p cnf 1 0\n");
        let text = write_dimacs(&five_clause_example());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p cnf 3 5");
        assert_eq!(lines.len(), 6);
        assert!(lines[1..].iter().all(|l| l.ends_with(" 0")));
        assert_eq!(write_dimacs(&Cnf::contradiction(2)), "p cnf 2 1\n0\n");
    }

    #[test]
    fn roundtrip_random_instances() {
        for seed in 0..100 {
            let f = random_ksat(10, 30, 3, seed).unwrap();
            assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
        }
    }
}
