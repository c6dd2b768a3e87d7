//! Plain-text graph format.
//!
//! ```text
//! # comment lines start with '#'
//! n m [directed]
//! u v
//! ...
//! ```
//! Vertices are 0-indexed; each arc line `u v` means `u → v`.

use super::{Digraph, Mode};
use crate::error::{Error, Result};
use std::fmt::Write as _;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

pub fn read_graph(text: &str) -> Result<Digraph> {
    let mut header: Option<(usize, usize, Mode)> = None;
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match header {
            None => {
                if !(2..=3).contains(&toks.len()) {
                    return Err(parse_err(line, "header must be `n m [directed]`"));
                }
                let n = parse_usize(toks[0], line)?;
                let m = parse_usize(toks[1], line)?;
                let mode = match toks.get(2) {
                    None => Mode::Oriented,
                    Some(&"directed") => Mode::Directed,
                    Some(&"oriented") => Mode::Oriented,
                    Some(other) => return Err(parse_err(line, format!("unknown mode {other:?}"))),
                };
                header = Some((n, m, mode));
            }
            Some((n, _, _)) => {
                if toks.len() != 2 {
                    return Err(parse_err(line, "arc line must be `u v`"));
                }
                let u = parse_usize(toks[0], line)?;
                let v = parse_usize(toks[1], line)?;
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("arc ({u}, {v}) out of range for n = {n}")));
                }
                arcs.push((line, u, v));
            }
        }
    }
    let (n, m, mode) = header.ok_or_else(|| parse_err(last_line.max(1), "missing header"))?;
    if arcs.len() != m {
        return Err(parse_err(last_line.max(1), format!("header declares {m} arcs, found {}", arcs.len())));
    }
    let mut g = Digraph::empty(n, mode);
    for (line, u, v) in arcs {
        g.try_add_arc(u, v).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

/// Canonical text: header then arcs sorted lexicographically.
pub fn write_graph(g: &Digraph) -> String {
    let mut s = String::new();
    match g.mode() {
        Mode::Oriented => writeln!(s, "{} {}", g.n(), g.arc_count()).unwrap(),
        Mode::Directed => writeln!(s, "{} {} directed", g.n(), g.arc_count()).unwrap(),
    }
    for (u, v) in g.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_triangle() {
        let g = read_graph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, Digraph::directed_cycle(3));
    }

    #[test]
    fn malformed_arc_reports_line() {
        let e = read_graph("2 1\n0 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn comments_and_canonical_order() {
        let t = "# a comment\n3 3\n2 0\n# inner\n0 1\n1 2\n";
        let g = read_graph(t).unwrap();
        assert_eq!(write_graph(&g), "3 3\n0 1\n1 2\n2 0\n");
    }

    #[test]
    fn directed_header() {
        let g = read_graph("2 2 directed\n0 1\n1 0\n").unwrap();
        assert_eq!(g.mode(), Mode::Directed);
        assert_eq!(write_graph(&g), "2 2 directed\n0 1\n1 0\n");
        let e = read_graph("2 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn count_mismatch() {
        assert!(matches!(read_graph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_graph(""), Err(Error::Parse { .. })));
    }
}
