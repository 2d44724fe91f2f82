//! Text formats: the `n m` edge-list format and graph6 for simple graphs.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GraphError, MultiGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Lines starting with `#` and blank lines are ignored; repeated pairs accumulate.
pub fn parse_edge_list(text: &str) -> Result<MultiGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::Empty)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut pairs = Vec::with_capacity(m);
    for (line, l) in lines {
        pairs.push(parse_pair(line, l)?);
    }
    if pairs.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: pairs.len(),
        });
    }
    Ok(MultiGraph::from_edge_list(n, &pairs)?)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), ParseError> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| ParseError::Syntax {
            line,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| ParseError::Syntax {
            line,
            msg: format!("not a nonnegative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(ParseError::Syntax {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

/// Formats a graph in the edge-list format, parallel copies on separate lines.
pub fn to_edge_list(g: &MultiGraph) -> String {
    let mut out = String::new();
    let edges = g.edge_list();
    let _ = writeln!(out, "{} {}", g.vertex_count(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Decodes a graph6 string (optionally prefixed by `>>graph6<<`).
pub fn parse_graph6(s: &str) -> Result<MultiGraph, ParseError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let vals: Vec<u32> = bytes.iter().map(|&b| (b - 63) as u32).collect();
    let (n, rest) = if vals[0] < 63 {
        (vals[0] as usize, &vals[1..])
    } else if vals.len() >= 4 && vals[1] < 63 {
        let n = (vals[1] << 12) | (vals[2] << 6) | vals[3];
        (n as usize, &vals[4..])
    } else if vals.len() >= 8 {
        let mut n: u64 = 0;
        for &v in &vals[2..8] {
            n = (n << 6) | v as u64;
        }
        (n as usize, &vals[8..])
    } else {
        return Err(ParseError::Graph6("truncated size field".into()));
    };
    let needed_bits = n * n.saturating_sub(1) / 2;
    if rest.len() * 6 < needed_bits || rest.len() != needed_bits.div_ceil(6) {
        return Err(ParseError::Graph6(format!(
            "expected {} data bytes for n={n}, found {}",
            needed_bits.div_ceil(6),
            rest.len()
        )));
    }
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let bit = (rest[k / 6] >> (5 - k % 6)) & 1;
            if bit == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    Ok(MultiGraph::from_edge_list(n, &pairs)?)
}

/// Encodes a simple graph as graph6; `None` for graphs with parallel edges.
pub fn to_graph6(g: &MultiGraph) -> Option<String> {
    if !g.is_simple() {
        return None;
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.multiplicity(i, j) > 0);
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Some(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Auto-detects the format: the first meaningful line starting with a digit and
/// holding two tokens is an edge-list header; anything else is tried as graph6.
pub fn parse_graph(text: &str) -> Result<MultiGraph, ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or(ParseError::Empty)?;
    let looks_like_header = first.starts_with(|c: char| c.is_ascii_digit())
        && first.split_whitespace().count() == 2;
    if looks_like_header {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments_and_repeats() {
        let g = parse_edge_list("# two-cycle\n2 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g, MultiGraph::cycle(2));
    }

    #[test]
    fn single_vertex() {
        let g = parse_edge_list("1 0\n").unwrap();
        assert_eq!(g, MultiGraph::empty(1));
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(parse_edge_list(""), Err(ParseError::Empty));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(ParseError::EdgeCountMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 0\n"),
            Err(ParseError::Graph(GraphError::LoopRejected(0)))
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = MultiGraph::from_weighted(4, &[(0, 1, 3), (2, 3, 1)]).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_known_strings() {
        // K4 is "C~", the 5-cycle 0-1-2-3-4 is "Dhc"
        assert_eq!(parse_graph6("C~").unwrap(), MultiGraph::complete(4));
        assert_eq!(to_graph6(&MultiGraph::complete(4)).unwrap(), "C~");
        assert_eq!(parse_graph6("Dhc").unwrap(), MultiGraph::cycle(5));
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), MultiGraph::complete(4));
        assert!(to_graph6(&MultiGraph::cycle(2)).is_none());
    }

    #[test]
    fn graph6_rejects_bad_length() {
        assert!(matches!(parse_graph6("C~~"), Err(ParseError::Graph6(_))));
    }

    #[test]
    fn auto_detect() {
        assert_eq!(parse_graph("C~\n").unwrap(), MultiGraph::complete(4));
        assert_eq!(parse_graph("3 3\n0 1\n1 2\n0 2\n").unwrap(), MultiGraph::complete(3));
    }
}
