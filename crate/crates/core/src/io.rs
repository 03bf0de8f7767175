//! Edge-list text format and DOT export.
//!
//! ```text
//! # reflexive 3-cycle
//! 3 6
//! 0 0
//! 0 1
//! ...
//! ```
//!
//! The first non-comment line is `n m`, followed by exactly `m` lines `u v`
//! with 0-based vertex indices. `#` starts a comment anywhere on a line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::relation::Relation;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_pair(line: usize, body: &str, what: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: format!("expected {what} as two integers, found {:?}", body),
        });
    }
    let num = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("{s:?} is not a nonnegative integer"),
        })
    };
    Ok((num(fields[0])?, num(fields[1])?))
}

pub fn parse_edge_list(text: &str) -> Result<Relation> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing header line `n m`".into(),
    })?;
    let (n, m) = parse_pair(hline, header, "header `n m`")?;
    let mut rel = Relation::empty(n);
    let mut last_line = hline;
    for k in 0..m {
        let (line, body) = lines.next().ok_or_else(|| Error::Parse {
            line: last_line,
            msg: format!("header declares {m} edges but only {k} follow"),
        })?;
        let (u, v) = parse_pair(line, body, "an edge `u v`")?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("edge ({u}, {v}) references a vertex outside 0..{n}"),
            });
        }
        rel.add_edge(u, v)?;
        last_line = line;
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: format!("header declares {m} edges but more lines follow"),
        });
    }
    Ok(rel)
}

pub fn write_edge_list(rel: &Relation) -> String {
    let mut out = format!("{} {}\n", rel.n(), rel.edge_count());
    for (u, v) in rel.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Graphviz rendering. Vertices are labelled with `labels` when given.
pub fn write_dot(rel: &Relation, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph relation {\n");
    for v in 0..rel.n() {
        match labels {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in rel.edges() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
