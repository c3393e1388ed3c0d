//! DIMACS edge format (`p edge <n> <m>`, `e <u> <v>`, 1-based ids).

use std::fmt::Write as _;

use thiserror::Error;

use super::{Graph, GraphError, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    token.parse().map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    // (header line, n, declared m)
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    Some(other) => return Err(ParseError::new(line, format!("unsupported format `{other}`"))),
                    None => return Err(ParseError::new(line, "missing format in problem line")),
                }
                let n = parse_count(tokens.next(), line, "vertex count")?;
                let m = parse_count(tokens.next(), line, "edge count")?;
                if tokens.next().is_some() {
                    return Err(ParseError::new(line, "trailing tokens in problem line"));
                }
                header = Some((line, n, m));
            }
            "e" => {
                let Some((_, n, _)) = header else {
                    return Err(ParseError::new(line, "edge before problem line"));
                };
                let mut endpoint = |what| -> Result<VertexId, ParseError> {
                    let id = parse_count(tokens.next(), line, what)?;
                    if id == 0 || id > n {
                        return Err(ParseError::new(line, format!("{what} {id} out of range 1..={n}")));
                    }
                    Ok(id - 1)
                };
                let u = endpoint("endpoint")?;
                let v = endpoint("endpoint")?;
                if tokens.next().is_some() {
                    return Err(ParseError::new(line, "trailing tokens in edge line"));
                }
                if u == v {
                    return Err(ParseError::new(line, format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            other => return Err(ParseError::new(line, format!("unknown line type `{other}`"))),
        }
    }

    let (header_line, n, m) = header.ok_or_else(|| ParseError::new(1, "missing problem line"))?;
    let graph = Graph::from_edges(n, edges).map_err(|e: GraphError| ParseError::new(header_line, e.to_string()))?;
    if graph.n_edges() != m {
        return Err(ParseError::new(
            header_line,
            format!("declared {m} edges but found {} distinct edges", graph.n_edges()),
        ));
    }
    Ok(graph)
}

/// Canonical text: header, then edges sorted by (min, max) endpoint.
pub fn write_instance(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 14 * g.n_edges());
    writeln!(out, "p edge {} {}", g.n_vertices(), g.n_edges()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
