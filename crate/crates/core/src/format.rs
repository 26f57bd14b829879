//! Plain-text graph and colouring files.
//!
//! Graph files:
//!
//! ```text
//! vertices 3
//! edge 0 1
//! edge 1 2
//! label 0 x
//! ```
//!
//! Colouring files pair with a graph file by edge id:
//!
//! ```text
//! colours 4
//! set 0 1
//! set 1 3
//! ```
//!
//! `#` starts a comment; blank lines and trailing whitespace are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::colouring::{Colour, PartialColouring};
use crate::error::{Error, Result};
use crate::multigraph::{Labels, Multigraph};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T> {
    word.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{word}`")))
}

fn arity(line: usize, words: &[&str], n: usize) -> Result<()> {
    if words.len() != n {
        return Err(Error::parse(
            line,
            format!("`{}` takes {} argument(s)", words[0], n - 1),
        ));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<(Multigraph, Labels)> {
    let mut lines = content_lines(text);
    let (line, words) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty graph file"))?;
    if words[0] != "vertices" {
        return Err(Error::parse(line, "first line must be `vertices N`"));
    }
    arity(line, &words, 2)?;
    let n: usize = number(line, words[1], "vertex count")?;
    let mut edges = Vec::new();
    let mut labels = Labels::new(n);
    for (line, words) in lines {
        match words[0] {
            "edge" => {
                arity(line, &words, 3)?;
                let a: usize = number(line, words[1], "vertex id")?;
                let b: usize = number(line, words[2], "vertex id")?;
                if a >= n || b >= n {
                    return Err(Error::parse(line, format!("vertex id out of range 0..{n}")));
                }
                if a == b {
                    return Err(Error::parse(line, format!("loop at vertex {a}")));
                }
                edges.push((a, b));
            }
            "label" => {
                arity(line, &words, 3)?;
                let v: usize = number(line, words[1], "vertex id")?;
                if v >= n {
                    return Err(Error::parse(line, format!("vertex id out of range 0..{n}")));
                }
                if labels.lookup(words[2]).is_some_and(|u| u != v) {
                    return Err(Error::parse(
                        line,
                        format!("duplicate label `{}`", words[2]),
                    ));
                }
                labels.set(v, words[2]);
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok((Multigraph::new(n, edges)?, labels))
}

/// Parse a colouring for `g`. Properness is not checked here.
pub fn parse_colouring(text: &str, g: &Multigraph) -> Result<PartialColouring> {
    let mut lines = content_lines(text);
    let (line, words) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty colouring file"))?;
    if words[0] != "colours" {
        return Err(Error::parse(line, "first line must be `colours K`"));
    }
    arity(line, &words, 2)?;
    let k: Colour = number(line, words[1], "colour count")?;
    let mut assignment = vec![None; g.edge_count()];
    for (line, words) in lines {
        if words[0] != "set" {
            return Err(Error::parse(
                line,
                format!("unknown directive `{}`", words[0]),
            ));
        }
        arity(line, &words, 3)?;
        let e: usize = number(line, words[1], "edge id")?;
        let c: Colour = number(line, words[2], "colour")?;
        if e >= g.edge_count() {
            return Err(Error::parse(line, format!("edge id {e} out of range")));
        }
        if c == 0 || c > k {
            return Err(Error::parse(line, format!("colour {c} outside 1..={k}")));
        }
        if assignment[e].is_some() {
            return Err(Error::parse(line, format!("edge {e} coloured twice")));
        }
        assignment[e] = Some(c);
    }
    PartialColouring::from_assignment(k, assignment)
}

pub fn write_graph(g: &Multigraph, labels: &Labels) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    for v in 0..g.vertex_count().min(labels.len()) {
        if let Some(name) = labels.get(v) {
            let _ = writeln!(out, "label {v} {name}");
        }
    }
    out
}

pub fn write_colouring(c: &PartialColouring) -> String {
    let mut out = format!("colours {}\n", c.k());
    for (e, col) in c.assignment().iter().enumerate() {
        if let Some(col) = col {
            let _ = writeln!(out, "set {e} {col}");
        }
    }
    out
}

pub fn read_graph(path: &Path) -> Result<(Multigraph, Labels)> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_colouring(path: &Path, g: &Multigraph) -> Result<PartialColouring> {
    parse_colouring(&std::fs::read_to_string(path)?, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "vertices 3  \n# a path\nedge 1 0\nedge 1 2 # tail\nlabel 0 x\n";
        let (g, labels) = parse_graph(text).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(labels.lookup("x"), Some(0));
        let again = parse_graph(&write_graph(&g, &labels)).unwrap();
        assert_eq!(again.0, g);

        let c = parse_colouring("colours 2\nset 1 2\n", &g).unwrap();
        assert_eq!(c.colour(0), None);
        assert_eq!(c.colour(1), Some(2));
        assert_eq!(parse_colouring(&write_colouring(&c), &g).unwrap(), c);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("edge 0 1").is_err());
        assert!(parse_graph("vertices 2\nedge 0 2").is_err());
        assert!(parse_graph("vertices 2\nedge 1 1").is_err());
        assert!(parse_graph("vertices 2\nbogus").is_err());
        assert!(parse_graph("vertices x").is_err());
        let (g, _) = parse_graph("vertices 2\nedge 0 1").unwrap();
        assert!(parse_colouring("colours 1\nset 0 2", &g).is_err());
        assert!(parse_colouring("colours 1\nset 5 1", &g).is_err());
        assert!(parse_colouring("colours 1\nset 0 1\nset 0 1", &g).is_err());
    }
}
