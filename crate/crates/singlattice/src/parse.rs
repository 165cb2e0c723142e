//! Line-oriented graph file format.
//!
//! ```text
//! graph <name>                         # optional, first non-comment line
//! v <id> sq=<int> [g=<nonneg int>] [sing]
//! e <id1> <id2> [m=<pos int>]
//! cycle <name> <id>=<int> [<id>=<int> ...]
//! # comment to end of line; blank lines ignored
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Cycle, ResolutionGraph, VertexData};

/// Parsed document: the graph, its optional name, and named cycles.
#[derive(Debug)]
pub struct ParsedDocument {
    pub graph: ResolutionGraph,
    pub name: Option<String>,
    pub cycles: BTreeMap<String, Cycle>,
}

struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(line: &str, lineno: usize) -> Vec<Tok<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut toks = Vec::new();
    let mut col = 0;
    for part in line.split_whitespace() {
        let start = line[col..].find(part).unwrap() + col;
        toks.push(Tok {
            text: part,
            line: lineno,
            col: start + 1,
        });
        col = start + part.len();
    }
    toks
}

fn parse_int(t: &Tok<'_>) -> Result<BigInt> {
    t.text
        .parse::<BigInt>()
        .map_err(|_| err(t.line, t.col, format!("expected integer, got {:?}", t.text)))
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a graph document. Returns the graph and the named cycles.
pub fn parse_graph(text: &str) -> Result<(ResolutionGraph, BTreeMap<String, Cycle>)> {
    let doc = parse_document(text)?;
    Ok((doc.graph, doc.cycles))
}

pub fn parse_document(text: &str) -> Result<ParsedDocument> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<VertexData> = Vec::new();
    let mut edges: Vec<(String, String, BigInt)> = Vec::new();
    // cycle lines are resolved after the graph is built
    let mut cycle_lines: Vec<(String, Vec<(String, BigInt, usize, usize)>)> = Vec::new();
    let mut seen_any = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokenize(raw, lineno);
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        match head.text {
            "graph" => {
                if seen_any {
                    return Err(err(
                        head.line,
                        head.col,
                        "graph line must be the first non-comment line",
                    ));
                }
                if name.is_some() {
                    return Err(err(head.line, head.col, "duplicate graph line"));
                }
                if toks.len() != 2 {
                    return Err(err(head.line, head.col, "usage: graph <name>"));
                }
                name = Some(toks[1].text.to_string());
            }
            "v" => {
                if toks.len() < 3 {
                    return Err(err(
                        head.line,
                        head.col,
                        "usage: v <id> sq=<int> [g=<nonneg int>] [sing]",
                    ));
                }
                let id = toks[1].text.to_string();
                if !valid_token(&id) {
                    return Err(err(toks[1].line, toks[1].col, "invalid vertex id"));
                }
                if vertices.iter().any(|v| v.id == id) {
                    return Err(err(
                        toks[1].line,
                        toks[1].col,
                        format!("duplicate vertex id {:?}", id),
                    ));
                }
                let mut sq: Option<BigInt> = None;
                let mut genus = BigInt::zero();
                let mut smooth = true;
                for t in &toks[2..] {
                    if let Some(v) = t.text.strip_prefix("sq=") {
                        let tv = Tok {
                            text: v,
                            line: t.line,
                            col: t.col + 3,
                        };
                        sq = Some(parse_int(&tv)?);
                    } else if let Some(v) = t.text.strip_prefix("g=") {
                        let tv = Tok {
                            text: v,
                            line: t.line,
                            col: t.col + 2,
                        };
                        let g = parse_int(&tv)?;
                        if g.is_negative() {
                            return Err(err(t.line, t.col, "genus must be nonnegative"));
                        }
                        genus = g;
                    } else if t.text == "sing" {
                        smooth = false;
                    } else {
                        return Err(err(
                            t.line,
                            t.col,
                            format!("unexpected token {:?} on vertex line", t.text),
                        ));
                    }
                }
                let sq = sq.ok_or_else(|| err(head.line, head.col, "missing sq=<int>"))?;
                vertices.push(VertexData {
                    id,
                    self_intersection: sq,
                    genus,
                    smooth,
                });
            }
            "e" => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(err(head.line, head.col, "usage: e <id1> <id2> [m=<pos int>]"));
                }
                let a = toks[1].text.to_string();
                let b = toks[2].text.to_string();
                let mut m = BigInt::from(1);
                if toks.len() == 4 {
                    let t = &toks[3];
                    let v = t.text.strip_prefix("m=").ok_or_else(|| {
                        err(t.line, t.col, format!("unexpected token {:?}", t.text))
                    })?;
                    let tv = Tok {
                        text: v,
                        line: t.line,
                        col: t.col + 2,
                    };
                    m = parse_int(&tv)?;
                    if !m.is_positive() {
                        return Err(err(t.line, t.col, "edge multiplicity must be positive"));
                    }
                }
                for (x, t) in [(&a, &toks[1]), (&b, &toks[2])] {
                    if !vertices.iter().any(|v| v.id == *x) {
                        return Err(err(
                            t.line,
                            t.col,
                            format!("edge references unknown id {:?}", x),
                        ));
                    }
                }
                if a == b {
                    return Err(err(toks[2].line, toks[2].col, "self-loops are not allowed"));
                }
                if edges
                    .iter()
                    .any(|(x, y, _)| (x == &a && y == &b) || (x == &b && y == &a))
                {
                    return Err(err(
                        head.line,
                        head.col,
                        format!("repeated edge {}-{}", a, b),
                    ));
                }
                edges.push((a, b, m));
            }
            "cycle" => {
                if toks.len() < 3 {
                    return Err(err(
                        head.line,
                        head.col,
                        "usage: cycle <name> <id>=<int> [...]",
                    ));
                }
                let cname = toks[1].text.to_string();
                if !valid_token(&cname) {
                    return Err(err(toks[1].line, toks[1].col, "invalid cycle name"));
                }
                let mut entries = Vec::new();
                for t in &toks[2..] {
                    let Some((id, val)) = t.text.split_once('=') else {
                        return Err(err(t.line, t.col, "expected <id>=<int>"));
                    };
                    let tv = Tok {
                        text: val,
                        line: t.line,
                        col: t.col + id.len() + 1,
                    };
                    let v = parse_int(&tv)?;
                    entries.push((id.to_string(), v, t.line, t.col));
                }
                cycle_lines.push((cname, entries));
            }
            other => {
                return Err(err(
                    head.line,
                    head.col,
                    format!("unknown directive {:?}", other),
                ));
            }
        }
        if head.text != "graph" {
            seen_any = true;
        }
    }

    if vertices.is_empty() {
        return Err(err(1, 1, "document declares no vertices"));
    }

    let graph = match ResolutionGraph::new(vertices, edges) {
        Ok(g) => g,
        Err(Error::Validation(msg)) => return Err(err(1, 1, msg)),
        Err(e) => return Err(e),
    };

    let mut cycles = BTreeMap::new();
    for (cname, entries) in cycle_lines {
        let mut c = graph.zero_cycle();
        for (id, v, line, col) in entries {
            let Some(i) = graph.vertex_index(&id) else {
                return Err(err(
                    line,
                    col,
                    format!("cycle coefficient for unknown id {:?}", id),
                ));
            };
            c.set_coeff(i, v);
        }
        cycles.insert(cname, c);
    }

    Ok(ParsedDocument {
        graph,
        name,
        cycles,
    })
}
