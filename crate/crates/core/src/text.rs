//! Canonical grid text: `n=<int>`, `X=<list>`, `O=<list>`, one per line,
//! newline-terminated, no spaces.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::grid::{GridDiagram, GridError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `{field}=...`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}, field {field}: {message}")]
    Syntax { line: usize, field: &'static str, message: String },
    #[error("line {line}: unexpected trailing content")]
    Trailing { line: usize },
    #[error("line {line}, field {field}: {source}")]
    Invalid { line: usize, field: &'static str, source: GridError },
}

pub fn serialize_grid(g: &GridDiagram) -> String {
    let join = |v: &[usize]| v.iter().map(|r| format!("{r}")).collect::<Vec<_>>().join(",");
    format!("n={}\nX={}\nO={}\n", g.n(), join(g.x_rows()), join(g.o_rows()))
}

fn field<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    line: usize,
    name: &'static str,
) -> Result<(usize, &'a str), ParseError> {
    let (at, text) = lines.next().ok_or(ParseError::MissingField { line, field: name })?;
    let value = text
        .strip_prefix(name)
        .and_then(|t| t.strip_prefix('='))
        .ok_or(ParseError::MissingField { line: at, field: name })?;
    Ok((at, value))
}

fn rows(line: usize, field: &'static str, value: &str) -> Result<Vec<usize>, ParseError> {
    if value.is_empty() {
        return Err(ParseError::Syntax { line, field, message: "empty list".into() });
    }
    value
        .split(',')
        .enumerate()
        .map(|(i, t)| {
            t.parse::<usize>().map_err(|_| ParseError::Syntax {
                line,
                field,
                message: format!("entry {i} `{t}` is not a row index"),
            })
        })
        .collect()
}

/// Parse grid text. Trailing `\r` and a missing final newline are tolerated;
/// anything after the third line other than blank lines is not.
pub fn parse_grid(text: &str) -> Result<GridDiagram, ParseError> {
    let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).enumerate().map(|(i, l)| (i + 1, l));
    let (nl, n) = field(&mut lines, 1, "n")?;
    let n: usize = n.parse().map_err(|_| ParseError::Syntax {
        line: nl,
        field: "n",
        message: format!("`{n}` is not a grid number"),
    })?;
    let (xl, x) = field(&mut lines, 2, "X")?;
    let x = rows(xl, "X", x)?;
    let (ol, o) = field(&mut lines, 3, "O")?;
    let o = rows(ol, "O", o)?;
    if let Some((line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::Trailing { line });
    }
    if x.len() != n {
        let source = GridError::WrongLength { marking: crate::grid::Marking::X, expected: n, got: x.len() };
        return Err(ParseError::Invalid { line: xl, field: "X", source });
    }
    GridDiagram::new(x, o).map_err(|source| {
        let (line, field) = match &source {
            GridError::OutOfRange { marking: crate::grid::Marking::X, .. }
            | GridError::NotPermutation { marking: crate::grid::Marking::X, .. } => (xl, "X"),
            GridError::Empty => (nl, "n"),
            _ => (ol, "O"),
        };
        ParseError::Invalid { line, field, source }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = parse_grid("n=2\nX=0,1\nO=1,0").unwrap();
        assert_eq!(g.x_rows(), &[0, 1]);
        assert_eq!(serialize_grid(&g), "n=2\nX=0,1\nO=1,0\n");
        assert_eq!(parse_grid(&serialize_grid(&g)).unwrap(), g);
    }

    #[test]
    fn collision_names_the_column() {
        let e = parse_grid("n=2\nX=0,1\nO=0,1\n").unwrap_err();
        assert_eq!(e, ParseError::Invalid { line: 3, field: "O", source: GridError::Collision { column: 0 } });
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(parse_grid("n=2\nX=0,a\nO=1,0\n"), Err(ParseError::Syntax { line: 2, field: "X", .. })));
        assert!(matches!(parse_grid("n=2\nO=0,1\n"), Err(ParseError::MissingField { line: 2, field: "X" })));
        assert!(matches!(parse_grid("n=2\nX=0,1\nO=1,0\nzz\n"), Err(ParseError::Trailing { line: 4 })));
        assert!(matches!(parse_grid("n=3\nX=0,1\nO=1,0\n"), Err(ParseError::Invalid { line: 2, field: "X", .. })));
        assert!(matches!(parse_grid("n=2\nX=0,0\nO=1,0\n"), Err(ParseError::Invalid { line: 2, field: "X", .. })));
    }
}
