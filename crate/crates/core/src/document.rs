//! The `.tsys` text format and its JSON mirror.
//!
//! ```text
//! # comment
//! grid 2 1
//! name example
//! 0 0 -> 1 0
//! 0 0 -> 0 1
//! ```
//!
//! The first non-comment line is the grid header. Edge lines hold two
//! vertices separated by `->`. Reflexive edges are implicit; if present they
//! are dropped with a warning.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Edge, Grid, Vertex};
use crate::transfer::TransferSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsysDocument {
    pub r: usize,
    pub s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Strict edges in `(src, dst)` order, without repeats.
    pub edges: Vec<Edge>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl TsysDocument {
    pub fn new(grid: Grid, edges: &[Edge]) -> Self {
        let set: BTreeSet<Edge> = edges.iter().copied().filter(|e| e.src != e.dst).collect();
        TsysDocument {
            r: grid.r,
            s: grid.s,
            name: None,
            edges: set.into_iter().collect(),
            warnings: Vec::new(),
        }
    }

    pub fn from_system(t: &TransferSystem) -> Self {
        TsysDocument::new(t.grid(), &t.edges())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.r, self.s)
    }

    /// The edges must already form a transfer system.
    pub fn to_system(&self) -> Result<TransferSystem> {
        TransferSystem::from_edges(self.grid(), &self.edges)
    }

    /// Transfer closure of the edges.
    pub fn close(&self) -> Result<TransferSystem> {
        TransferSystem::closure(self.grid(), &self.edges)
    }

    pub fn transpose(&self) -> TsysDocument {
        let edges: Vec<Edge> = self.edges.iter().map(|e| e.transpose()).collect();
        let mut doc = TsysDocument::new(self.grid().transpose(), &edges);
        doc.name = self.name.clone();
        doc.warnings = self.warnings.clone();
        doc
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "grid {} {}", self.r, self.s);
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name {}", name);
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{} {} -> {} {}",
                e.src.i, e.src.j, e.dst.i, e.dst.j
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TsysDocument =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let grid = doc.grid();
        for e in &doc.edges {
            grid.check_edge(*e)?;
        }
        let mut out = TsysDocument::new(grid, &doc.edges);
        out.name = doc.name;
        Ok(out)
    }

    /// Parses either format, choosing JSON when the text starts with `{`.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            TsysDocument::from_json(text)
        } else {
            parse_tsys(text)
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, got '{}'", tok)))
}

fn parse_vertex(toks: &[&str], line: usize) -> Result<Vertex> {
    match toks {
        [i, j] => Ok(Vertex::new(parse_num(i, line)?, parse_num(j, line)?)),
        _ => Err(parse_err(line, "a vertex is two integers 'i j'")),
    }
}

pub fn parse_tsys(text: &str) -> Result<TsysDocument> {
    let mut grid: Option<Grid> = None;
    let mut name = None;
    let mut edges = BTreeSet::new();
    let mut warnings = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(g) = grid else {
            match toks.as_slice() {
                ["grid", r, s] => grid = Some(Grid::new(parse_num(r, line)?, parse_num(s, line)?)),
                _ => return Err(parse_err(line, "expected header 'grid R S'")),
            }
            continue;
        };
        if toks[0] == "name" {
            if name.is_some() {
                return Err(parse_err(line, "duplicate name line"));
            }
            let rest = content["name".len()..].trim();
            if rest.is_empty() {
                return Err(parse_err(line, "empty name"));
            }
            name = Some(rest.to_string());
            continue;
        }
        let Some(arrow) = toks.iter().position(|&t| t == "->") else {
            return Err(parse_err(line, "expected an edge 'i1 j1 -> i2 j2'"));
        };
        let src = parse_vertex(&toks[..arrow], line)?;
        let dst = parse_vertex(&toks[arrow + 1..], line)?;
        let e = Edge::new(src, dst);
        g.check_edge(e).map_err(|err| parse_err(line, err.to_string()))?;
        if src == dst {
            warnings.push(format!("line {}: reflexive edge {} ignored", line, e));
            continue;
        }
        edges.insert(e);
    }

    let grid = grid.ok_or_else(|| parse_err(0, "missing header 'grid R S'"))?;
    Ok(TsysDocument {
        r: grid.r,
        s: grid.s,
        name,
        edges: edges.into_iter().collect(),
        warnings,
    })
}

pub fn render_tsys(doc: &TsysDocument) -> String {
    doc.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::edge;

    #[test]
    fn parse_basic() {
        let d = parse_tsys("grid 2 1\n0 0 -> 1 0\n0 0 -> 0 1").unwrap();
        assert_eq!(d.grid(), Grid::new(2, 1));
        assert_eq!(d.edges, vec![edge((0, 0), (0, 1)), edge((0, 0), (1, 0))]);
        let d = parse_tsys("grid 0 0").unwrap();
        assert!(d.edges.is_empty());
    }

    #[test]
    fn comments_name_and_reflexive() {
        let text = "# header comment\n\ngrid 1 1  # trailing\nname pq\n1 1 -> 1 1\n0 0->1 0\n";
        // "0 0->1 0" has no spaced arrow and is malformed
        assert!(matches!(parse_tsys(text), Err(Error::Parse { line: 6, .. })));
        let text = "# header comment\n\ngrid 1 1  # trailing\nname pq\n1 1 -> 1 1\n0 0 -> 1 0\n";
        let d = parse_tsys(text).unwrap();
        assert_eq!(d.name.as_deref(), Some("pq"));
        assert_eq!(d.edges.len(), 1);
        assert_eq!(d.warnings.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("0 0 -> 1 0", 1),
            ("grid 1 1\n0 0 -> 2 0", 2),
            ("grid 1 1\n\n0 0 1 0", 3),
            ("grid 1 x", 1),
            ("grid 1 1\n0 -> 1 0", 2),
        ];
        for (text, line) in cases {
            match parse_tsys(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{}", text),
                other => panic!("{:?} for {:?}", other, text),
            }
        }
        assert!(parse_tsys("# nothing").is_err());
    }

    #[test]
    fn render_round_trip() {
        let d = parse_tsys("grid 2 1\nname x\n1 0 -> 1 1\n0 0 -> 1 0\n0 0 -> 1 0").unwrap();
        let text = d.render();
        assert_eq!(text, "grid 2 1\nname x\n0 0 -> 1 0\n1 0 -> 1 1\n");
        assert_eq!(parse_tsys(&text).unwrap(), d);
    }

    #[test]
    fn json_round_trip() {
        let d = TsysDocument::new(Grid::new(1, 1), &[edge((0, 0), (1, 0))]);
        let j = d.to_json();
        assert_eq!(j, r#"{"r":1,"s":1,"edges":[[[0,0],[1,0]]]}"#);
        assert_eq!(TsysDocument::from_json(&j).unwrap(), d);
        assert_eq!(TsysDocument::parse_any(&j).unwrap(), d);
        assert!(TsysDocument::from_json(r#"{"r":0,"s":0,"edges":[[[0,0],[1,0]]]}"#).is_err());
    }

    #[test]
    fn transpose_swaps_coordinates() {
        let d = TsysDocument::new(Grid::new(2, 1), &[edge((0, 0), (2, 0))]);
        let t = d.transpose();
        assert_eq!(t.grid(), Grid::new(1, 2));
        assert_eq!(t.edges, vec![edge((0, 0), (0, 2))]);
    }
}
