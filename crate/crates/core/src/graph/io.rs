//! Graph file formats.
//!
//! DIMACS edge format (read only):
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v>        (1-based)
//! ```
//!
//! Canonical format (read and write): a header line `n m`, then one `u v`
//! line per edge with 0-based `u < v`, in lexicographic order.

use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write as _;

/// A parsed DIMACS file plus any non-fatal warnings.
#[derive(Debug, Clone)]
pub struct DimacsGraph {
    pub graph: Graph,
    pub declared_edges: usize,
    pub warnings: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<DimacsGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap_or_default();
        let err = |msg: String| Error::Parse { line: line_no, msg };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate `p` line".into()));
                }
                let format = tokens.next().ok_or_else(|| err("missing format in `p` line".into()))?;
                if format != "edge" && format != "col" {
                    return Err(err(format!("unsupported format `{format}`")));
                }
                let n = parse_usize(tokens.next(), line_no, "vertex count")?;
                let m = parse_usize(tokens.next(), line_no, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) =
                    header.ok_or_else(|| err("edge line before the `p edge n m` header (missing `p` line)".into()))?;
                let u = parse_usize(tokens.next(), line_no, "edge endpoint")?;
                let v = parse_usize(tokens.next(), line_no, "edge endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(err(format!("vertex {w} outside [1, {n}]")));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(err(format!("unrecognized line tag `{other}`"))),
        }
    }
    let (n, declared) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `p edge n m` header".into(),
    })?;
    let graph = Graph::from_edges(n, edges)?;
    let mut warnings = Vec::new();
    if graph.m() != declared {
        let w = format!(
            "header declares {declared} edges but {} distinct edges were read",
            graph.m()
        );
        log::warn!("{w}");
        warnings.push(w);
    }
    Ok(DimacsGraph {
        graph,
        declared_edges: declared,
        warnings,
    })
}

fn parse_usize(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} `{token}`"),
    })
}

pub fn write_canonical(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_canonical(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty file".into(),
    })?;
    let mut h = header.split_whitespace();
    let n = parse_usize(h.next(), hline, "vertex count")?;
    let m = parse_usize(h.next(), hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let mut t = l.split_whitespace();
        let u = parse_usize(t.next(), line, "edge endpoint")?;
        let v = parse_usize(t.next(), line, "edge endpoint")?;
        if u >= v {
            return Err(Error::Parse {
                line,
                msg: format!("edge ({u}, {v}) is not in canonical u < v form"),
            });
        }
        edges.push((u, v));
    }
    let g = Graph::from_edges(n, edges).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })?;
    if g.m() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, file has {} distinct", g.m()),
        });
    }
    Ok(g)
}
