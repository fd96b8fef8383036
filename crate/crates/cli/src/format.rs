//! Graph files: `p bip <a> <b>` header, `e <x> <y>` edges with 1-based indices
//! per part, `c` comment lines, blank lines ignored.

use std::fmt::Write as _;

use thiserror::Error;
use whc_core::BipartiteGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header `p bip <a> <b>`")]
    MalformedHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("edge before header")]
    EdgeBeforeHeader,
    #[error("missing header")]
    MissingHeader,
    #[error("expected edge `e <x> <y>`")]
    MalformedEdge,
    #[error("{0:?} is not a non-negative integer")]
    NotAnInteger(String),
    #[error("edge ({x}, {y}) is out of range for parts of size {a} and {b}")]
    OutOfRange { x: usize, y: usize, a: usize, b: usize },
    #[error("unknown record type {0:?}")]
    UnknownRecord(String),
    #[error("{0}")]
    Graph(String),
}

fn int(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError { line, kind: ParseErrorKind::NotAnInteger(token.to_string()) })
}

pub fn parse_graph_file(text: &str) -> Result<BipartiteGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let err = |kind| Err(ParseError { line, kind });
        match tokens.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", rest @ ..] => {
                if header.is_some() {
                    return err(ParseErrorKind::DuplicateHeader);
                }
                let ["bip", a, b] = rest else { return err(ParseErrorKind::MalformedHeader) };
                let (a, b) = (int(a, line)?, int(b, line)?);
                BipartiteGraph::empty(a, b)
                    .map_err(|e| ParseError { line, kind: ParseErrorKind::Graph(e.to_string()) })?;
                header = Some((a, b));
            }
            ["e", rest @ ..] => {
                let Some((a, b)) = header else { return err(ParseErrorKind::EdgeBeforeHeader) };
                let [x, y] = rest else { return err(ParseErrorKind::MalformedEdge) };
                let (x, y) = (int(x, line)?, int(y, line)?);
                if x == 0 || y == 0 || x > a || y > b {
                    return err(ParseErrorKind::OutOfRange { x, y, a, b });
                }
                edges.push((x - 1, y - 1));
            }
            [other, ..] => return err(ParseErrorKind::UnknownRecord(other.to_string())),
        }
    }
    let Some((a, b)) = header else {
        return Err(ParseError { line: last.max(1), kind: ParseErrorKind::MissingHeader });
    };
    BipartiteGraph::from_edge_list(a, b, edges)
        .map_err(|e| ParseError { line: last, kind: ParseErrorKind::Graph(e.to_string()) })
}

pub fn write_graph_file(g: &BipartiteGraph) -> String {
    let (a, b) = g.part_sizes();
    let mut out = format!("p bip {a} {b}\n");
    for (x, y) in g.edges_one_based() {
        writeln!(out, "e {x} {y}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use whc_core::make_complete;

    #[test]
    fn parses_k22() {
        let g = parse_graph_file("p bip 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n").unwrap();
        assert_eq!(g, make_complete(2, 2).unwrap());
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph_file("c a comment\n\np bip 3 3\nc edges\ne 1 1\n  e 3 3  \n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(2, 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph_file("p bip 2 2\ne 3 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::OutOfRange { x: 3, y: 1, .. }));
        assert_eq!(parse_graph_file("e 1 1\n").unwrap_err().kind, ParseErrorKind::EdgeBeforeHeader);
        assert_eq!(parse_graph_file("p bip 2 x\n").unwrap_err().kind, ParseErrorKind::NotAnInteger("x".into()));
        assert_eq!(parse_graph_file("p bip 2\n").unwrap_err().kind, ParseErrorKind::MalformedHeader);
        assert_eq!(parse_graph_file("p bip 2 2\ne 1\n").unwrap_err().kind, ParseErrorKind::MalformedEdge);
        assert_eq!(parse_graph_file("p bip 2 2\ne 0 1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph_file("c only\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(parse_graph_file("p bip 1 1\np bip 1 1\n").unwrap_err().kind, ParseErrorKind::DuplicateHeader);
        assert_eq!(parse_graph_file("p bip 1 1\nx\n").unwrap_err().to_string(), "line 2: unknown record type \"x\"");
        assert!(parse_graph_file("p bip 65 1\n").is_err());
    }

    #[test]
    fn round_trip() {
        let g = make_complete(3, 2).unwrap().without_edge(1, 0);
        assert_eq!(parse_graph_file(&write_graph_file(&g)).unwrap(), g);
        assert_eq!(write_graph_file(&make_complete(1, 1).unwrap()), "p bip 1 1\ne 1 1\n");
    }
}
