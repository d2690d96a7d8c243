//! The MPG text format.
//!
//! ```text
//! mpg 1
//! parts <r>
//! sizes <n1> ... <nr>
//! edge <p1> <i1> <p2> <i2>
//! ```
//!
//! UTF-8, LF line endings, single spaces, trailing newline required. Edges are
//! written in canonical order; the parser accepts any order and either
//! orientation.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GraphBuilder, GraphError, MultipartiteGraph, VertexRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingTrailingNewline,
    MalformedHeader,
    UnsupportedVersion,
    MalformedEdge,
    VertexOutOfRange,
    IntraClassEdge,
    DuplicateEdge,
}

impl ParseErrorKind {
    /// Stable short code, one per failure class.
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::MissingTrailingNewline => "E-NEWLINE",
            ParseErrorKind::MalformedHeader => "E-HEADER",
            ParseErrorKind::UnsupportedVersion => "E-VERSION",
            ParseErrorKind::MalformedEdge => "E-EDGE-SYNTAX",
            ParseErrorKind::VertexOutOfRange => "E-VERTEX-RANGE",
            ParseErrorKind::IntraClassEdge => "E-INTRA-CLASS",
            ParseErrorKind::DuplicateEdge => "E-DUPLICATE-EDGE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at line {line}: {message}", kind.code())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub message: String,
}

fn err(kind: ParseErrorKind, line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind,
        line,
        message: message.into(),
    }
}

pub(super) fn serialize(g: &MultipartiteGraph) -> String {
    let mut out = String::new();
    out.push_str("mpg 1\n");
    let _ = writeln!(out, "parts {}", g.num_classes());
    out.push_str("sizes");
    for s in g.class_sizes() {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
    for (a, b) in g.edges() {
        let _ = writeln!(out, "edge {} {} {} {}", a.part, a.index, b.part, b.index);
    }
    out
}

fn numbers(tokens: &[&str], line: usize, kind: ParseErrorKind) -> Result<Vec<usize>, ParseError> {
    tokens
        .iter()
        .map(|t| {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(kind, line, format!("not a nonnegative integer: {t:?}")));
            }
            t.parse::<usize>()
                .map_err(|_| err(kind, line, format!("integer too large: {t}")))
        })
        .collect()
}

pub(super) fn parse(text: &str) -> Result<MultipartiteGraph, ParseError> {
    use ParseErrorKind::*;

    if !text.ends_with('\n') {
        let line = text.split('\n').count();
        return Err(err(MissingTrailingNewline, line, "missing trailing newline"));
    }
    let lines: Vec<&str> = text[..text.len() - 1].split('\n').collect();
    if let Some(k) = lines.iter().position(|l| l.contains('\r')) {
        return Err(err(MalformedHeader, k + 1, "CR characters are not allowed"));
    }

    let header = |k: usize| -> Result<Vec<&str>, ParseError> {
        lines
            .get(k)
            .map(|l| l.split(' ').collect())
            .ok_or_else(|| err(MalformedHeader, k + 1, "truncated header"))
    };

    let magic = header(0)?;
    if magic.len() != 2 || magic[0] != "mpg" {
        return Err(err(MalformedHeader, 1, "expected `mpg 1`"));
    }
    if magic[1] != "1" {
        return Err(err(UnsupportedVersion, 1, format!("unsupported version {}", magic[1])));
    }

    let parts = header(1)?;
    if parts.len() != 2 || parts[0] != "parts" {
        return Err(err(MalformedHeader, 2, "expected `parts <r>`"));
    }
    let r = numbers(&parts[1..], 2, MalformedHeader)?[0];

    let sizes_line = header(2)?;
    if sizes_line[0] != "sizes" {
        return Err(err(MalformedHeader, 3, "expected `sizes ...`"));
    }
    let sizes = numbers(&sizes_line[1..], 3, MalformedHeader)?;
    if sizes.len() != r {
        return Err(err(
            MalformedHeader,
            3,
            format!("expected {r} class sizes, found {}", sizes.len()),
        ));
    }

    let mut builder = GraphBuilder::new(sizes);
    for (k, l) in lines.iter().enumerate().skip(3) {
        let line = k + 1;
        let tokens: Vec<&str> = l.split(' ').collect();
        if tokens.len() != 5 || tokens[0] != "edge" {
            return Err(err(MalformedEdge, line, "expected `edge <p1> <i1> <p2> <i2>`"));
        }
        let n = numbers(&tokens[1..], line, MalformedEdge)?;
        let (a, b) = (VertexRef::new(n[0], n[1]), VertexRef::new(n[2], n[3]));
        builder.add_edge(a, b).map_err(|e| {
            let kind = match e {
                GraphError::VertexOutOfRange(_) | GraphError::ClassOutOfRange(_) => VertexOutOfRange,
                GraphError::IntraClassEdge(..) => IntraClassEdge,
                GraphError::DuplicateEdge(..) | GraphError::MissingEdge(..) => DuplicateEdge,
            };
            err(kind, line, e.to_string())
        })?;
    }
    Ok(builder.build())
}
