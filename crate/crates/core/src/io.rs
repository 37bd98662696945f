//! Edge-list and graph6 readers and writers.
//!
//! Edge-list: the first non-comment line holds the vertex count `n`, then
//! one `u v` pair per line, 0-based. `#` starts a comment anywhere on a
//! line. graph6 follows the standard encoding (one graph per line).

use thiserror::Error;

use crate::graph::{GraphError, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("graph6 byte {pos}: {msg}")]
    Graph6 { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimpleGraph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text.trim()),
    }
}

pub fn emit_graph(g: &SimpleGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => emit_edge_list(g),
        GraphFormat::Graph6 => {
            let mut s = emit_graph6(g);
            s.push('\n');
            s
        }
    }
}

/// Guesses the format: a single non-comment line of printable graph6
/// characters that is not a plain number is treated as graph6.
pub fn detect_format(text: &str) -> GraphFormat {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    match lines.as_slice() {
        [only] if only.parse::<usize>().is_err() && !only.contains(char::is_whitespace) => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    }
}

fn edge_list_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::EdgeList { line, msg: msg.into() }
}

pub fn parse_edge_list(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut g: Option<SimpleGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match g.as_mut() {
            None => {
                let [n] = fields.as_slice() else {
                    return Err(edge_list_err(line_no, "header must be a single vertex count"));
                };
                let n =
                    n.parse::<usize>().map_err(|_| edge_list_err(line_no, format!("invalid vertex count {n:?}")))?;
                g = Some(SimpleGraph::new(n));
            }
            Some(graph) => {
                let [a, b] = fields.as_slice() else {
                    return Err(edge_list_err(line_no, "expected two vertex indices"));
                };
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| edge_list_err(line_no, format!("invalid vertex index {s:?}")))
                };
                let (u, v) = (parse(a)?, parse(b)?);
                match graph.add_edge(u, v) {
                    Ok(true) => {}
                    Ok(false) => return Err(edge_list_err(line_no, format!("duplicate edge {u} {v}"))),
                    Err(GraphError::SelfLoop(x)) => {
                        return Err(edge_list_err(line_no, format!("self-loop at vertex {x}")))
                    }
                    Err(e) => return Err(edge_list_err(line_no, e.to_string())),
                }
            }
        }
    }
    g.ok_or_else(|| edge_list_err(0, "missing header"))
}

pub fn emit_edge_list(g: &SimpleGraph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

fn g6_err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Graph6 { pos, msg: msg.into() }
}

pub fn parse_graph6(line: &str) -> Result<SimpleGraph, ParseError> {
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(pos, format!("byte {b:#04x} outside the graph6 range")));
        }
    }
    let (n, body_start) = match bytes {
        [] => return Err(g6_err(0, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(g6_err(2, "truncated 8-byte order header"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(1, "truncated 4-byte order header"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let body = &bytes[body_start..];
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(g6_err(
            body_start + body.len().min(bytes_needed),
            format!("expected {bytes_needed} data bytes for n = {n}, found {}", body.len()),
        ));
    }
    let mut g = SimpleGraph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v).expect("indices in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses a stream with one graph6 string per line, skipping blank lines.
pub fn parse_graph6_stream(text: &str) -> impl Iterator<Item = Result<SimpleGraph, ParseError>> + '_ {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(parse_graph6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_c4() {
        let g = parse_edge_list("4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, SimpleGraph::cycle(4));
    }

    #[test]
    fn edge_list_comments_and_errors() {
        let g = parse_edge_list("# a comment\n3 # order\n0 1 # edge\n\n1 2\n").unwrap();
        assert_eq!(g, SimpleGraph::path(3));
        assert!(matches!(parse_edge_list("2\n0 0\n"), Err(ParseError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("2\n0 2\n"), Err(ParseError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("x\n"), Err(ParseError::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(ParseError::EdgeList { line: 2, .. })));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn graph6_k4() {
        assert_eq!(parse_graph6("C~").unwrap(), SimpleGraph::complete(4));
        assert_eq!(emit_graph6(&SimpleGraph::complete(4)), "C~");
        assert!(matches!(parse_graph6("C\u{e9}"), Err(ParseError::Graph6 { pos: 1, .. })));
        assert!(matches!(parse_graph6("C~~"), Err(ParseError::Graph6 { .. })));
    }

    #[test]
    fn graph6_large_order_header() {
        let g = SimpleGraph::cycle(70);
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("C~\n"), GraphFormat::Graph6);
        assert_eq!(detect_format("4\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("4\n"), GraphFormat::EdgeList);
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (0usize..12).prop_flat_map(|n| {
            let m = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
                let mut g = SimpleGraph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn round_trips(g in arb_graph()) {
            prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        }
    }
}
