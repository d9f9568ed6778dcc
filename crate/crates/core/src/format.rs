//! Text formats: the colored edge list (read/write) and DOT (write only).
//!
//! Colored edge list:
//!
//! ```text
//! # comment
//! n m
//! u v c
//! ...
//! ```
//!
//! Exactly `m` edge lines must follow the header. Everything after a `#` on a
//! line is ignored.

use std::fmt::Write;

use crate::colored_graph::EdgeColoredGraph;
use crate::error::{Error, Result};

pub fn parse_graph_file(text: &str) -> Result<EdgeColoredGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<usize> = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{tok}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<_>>()?;

        match header {
            None => {
                let [n, m] = fields[..] else {
                    return Err(Error::Parse {
                        line,
                        message: "header must be `n m`".into(),
                    });
                };
                header = Some((n, m));
            }
            Some((n, m)) => {
                let [u, v, c] = fields[..] else {
                    return Err(Error::Parse {
                        line,
                        message: "edge line must be `u v c`".into(),
                    });
                };
                if edges.len() == m {
                    return Err(Error::Parse {
                        line,
                        message: format!("more than the {m} edges declared in the header"),
                    });
                }
                for w in [u, v] {
                    if w >= n {
                        return Err(Error::Parse {
                            line,
                            message: format!("vertex {w} out of range for n = {n}"),
                        });
                    }
                }
                edges.push((u, v, c));
            }
        }
    }

    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: last_line.max(1),
            message: "missing `n m` header".into(),
        });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    EdgeColoredGraph::build(n, edges)
}

pub fn write_graph_file(g: &EdgeColoredGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.color).unwrap();
    }
    out
}

/// Graphviz rendering with color ids as edge labels.
pub fn write_dot(g: &EdgeColoredGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.color).unwrap();
    }
    out.push_str("}\n");
    out
}
