//! Graph documents and their two serialized forms.
//!
//! Text form: the first significant line is the vertex count, every other
//! significant line is `from to weight`. Lines starting with `#` are
//! comments, except `#! name …`, `#! weights …` and `#! label <v> …`, which
//! carry the optional metadata so that the text form loses nothing.
//!
//! ```text
//! #! name example
//! 3
//! 2 1 4.5
//! 1 0 2
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, WeightedDigraph};
use crate::weights::WeightSequence;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{location}: {message}")]
    Semantic { location: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

fn semantic(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Semantic {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n_vertices: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertex_labels: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Suggested weight sequence for this graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightSequence>,
}

impl GraphDocument {
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        GraphDocument {
            n_vertices,
            edges: edges
                .into_iter()
                .map(|(from, to, weight)| EdgeRecord { from, to, weight })
                .collect(),
            ..GraphDocument::default()
        }
    }

    pub fn from_graph(g: &WeightedDigraph) -> Self {
        GraphDocument::new(
            g.n_vertices(),
            g.edges().iter().map(|e| (e.from.0, e.to.0, e.weight)),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Builds and validates the graph (acyclicity, duplicates).
    pub fn to_graph(&self) -> Result<WeightedDigraph, GraphError> {
        WeightedDigraph::new(
            self.n_vertices,
            self.edges.iter().map(|e| (e.from, e.to, e.weight)),
        )
    }

    /// Same document with every edge flipped.
    pub fn reversed(&self) -> GraphDocument {
        GraphDocument {
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    from: e.to,
                    to: e.from,
                    weight: e.weight,
                })
                .collect(),
            ..self.clone()
        }
    }

    pub fn label(&self, v: usize) -> String {
        self.vertex_labels
            .get(&v)
            .cloned()
            .unwrap_or_else(|| format!("v{v}"))
    }

    /// Field-addressed checks shared by both parsers.
    pub fn validate(&self) -> Result<(), FormatError> {
        for (i, e) in self.edges.iter().enumerate() {
            check_edge(self.n_vertices, e, || format!("edges[{i}]"))?;
        }
        for (v, text) in &self.vertex_labels {
            if *v >= self.n_vertices {
                return Err(semantic(
                    format!("vertex_labels[{v}]"),
                    format!("vertex {v} out of range for {} vertices", self.n_vertices),
                ));
            }
            check_single_line(text, || format!("vertex_labels[{v}]"))?;
        }
        if let Some(name) = &self.name {
            check_single_line(name, || "name".to_string())?;
        }
        Ok(())
    }
}

fn check_edge(n: usize, e: &EdgeRecord, location: impl Fn() -> String) -> Result<(), FormatError> {
    for v in [e.from, e.to] {
        if v >= n {
            return Err(semantic(
                location(),
                format!("vertex {v} out of range for {n} vertices"),
            ));
        }
    }
    if !(e.weight > 0.0 && e.weight.is_finite()) {
        return Err(semantic(
            location(),
            format!("weight must be positive and finite, got {}", e.weight),
        ));
    }
    Ok(())
}

fn check_single_line(text: &str, location: impl Fn() -> String) -> Result<(), FormatError> {
    if text.contains(['\n', '\r']) {
        return Err(semantic(location(), "text must fit on one line"));
    }
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<GraphDocument, FormatError> {
    let mut doc = GraphDocument::default();
    let mut count: Option<usize> = None;
    let mut labels: Vec<(usize, usize, String)> = Vec::new();

    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let syntax = |message: String| FormatError::Syntax {
            line: line_no,
            message,
        };
        if let Some(directive) = line.strip_prefix("#! ") {
            let (key, value) = directive.split_once(' ').unwrap_or((directive, ""));
            match key {
                "name" => doc.name = Some(value.to_string()),
                "weights" => {
                    let w = value
                        .parse::<WeightSequence>()
                        .map_err(|e| semantic(format!("line {line_no}"), e.to_string()))?;
                    doc.weights = Some(w);
                }
                "label" => {
                    let (index, label) = value.split_once(' ').unwrap_or((value, ""));
                    let index = index
                        .parse::<usize>()
                        .map_err(|e| syntax(format!("bad label vertex {index:?}: {e}")))?;
                    labels.push((line_no, index, label.to_string()));
                }
                _ => {}
            }
            continue;
        }
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match count {
            None => {
                if fields.len() != 1 {
                    return Err(syntax(format!(
                        "expected the vertex count, found {} fields",
                        fields.len()
                    )));
                }
                let n = fields[0]
                    .parse::<usize>()
                    .map_err(|e| syntax(format!("bad vertex count {:?}: {e}", fields[0])))?;
                count = Some(n);
                doc.n_vertices = n;
            }
            Some(n) => {
                if fields.len() != 3 {
                    return Err(syntax(format!(
                        "expected `from to weight`, found {} fields",
                        fields.len()
                    )));
                }
                let vertex = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|e| syntax(format!("bad vertex {s:?}: {e}")))
                };
                let from = vertex(fields[0])?;
                let to = vertex(fields[1])?;
                let weight = fields[2]
                    .parse::<f64>()
                    .map_err(|e| syntax(format!("bad weight {:?}: {e}", fields[2])))?;
                let edge = EdgeRecord { from, to, weight };
                check_edge(n, &edge, || format!("line {line_no}"))?;
                doc.edges.push(edge);
            }
        }
    }

    if count.is_none() {
        return Err(FormatError::Syntax {
            line: text.split('\n').count(),
            message: "missing vertex count".into(),
        });
    }
    for (line_no, index, label) in labels {
        if index >= doc.n_vertices {
            return Err(semantic(
                format!("line {line_no}"),
                format!("label for vertex {index} out of range"),
            ));
        }
        doc.vertex_labels.insert(index, label);
    }
    Ok(doc)
}

/// Inverse of [`parse_edge_list`] for documents that pass
/// [`GraphDocument::validate`].
pub fn serialize_edge_list(doc: &GraphDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "#! name {name}");
    }
    if let Some(w) = &doc.weights {
        let _ = writeln!(out, "#! weights {w}");
    }
    for (v, label) in &doc.vertex_labels {
        let _ = writeln!(out, "#! label {v} {label}");
    }
    let _ = writeln!(out, "{}", doc.n_vertices);
    for e in &doc.edges {
        let _ = writeln!(out, "{} {} {}", e.from, e.to, e.weight);
    }
    out
}

pub fn parse_json(text: &str) -> Result<GraphDocument, FormatError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

pub fn serialize_json(doc: &GraphDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

/// Picks the parser from the first significant character: `{` means JSON.
pub fn parse_any(text: &str) -> Result<GraphDocument, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::GREEDY_TRAP_EDGES;

    #[test]
    fn parses_greedy_trap() {
        let doc = parse_edge_list("6\n5 4 20\n4 3 3\n3 0 1\n4 2 3\n2 1 4\n1 0 2\n").unwrap();
        assert_eq!(doc.n_vertices, 6);
        assert_eq!(doc, GraphDocument::new(6, GREEDY_TRAP_EDGES));
        let g = doc.to_graph().unwrap();
        assert_eq!(g.n_edges(), 6);
    }

    #[test]
    fn single_vertex() {
        let doc = parse_edge_list("1\n").unwrap();
        assert_eq!(doc.n_vertices, 1);
        assert!(doc.edges.is_empty());
    }

    #[test]
    fn semantic_errors_carry_the_line() {
        let err = parse_edge_list("2\n0 1 -3\n").unwrap_err();
        assert_eq!(
            err,
            FormatError::Semantic {
                location: "line 2".into(),
                message: "weight must be positive and finite, got -3".into()
            }
        );
        let err = parse_edge_list("2\n# comment\n0 5 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Semantic { ref location, .. } if location == "line 3"));
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        assert!(matches!(
            parse_edge_list("2\n0 1\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("two\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n0 1 x\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("# nothing\n"),
            Err(FormatError::Syntax { .. })
        ));
    }

    #[test]
    fn metadata_round_trips_through_text() {
        let mut doc = GraphDocument::new(3, [(2, 1, 4.5), (1, 0, 2.0)]).with_name("demo graph");
        doc.weights = Some(WeightSequence::InversePower(2.0));
        doc.vertex_labels.insert(0, "root".into());
        doc.vertex_labels.insert(2, " leaf with spaces".into());
        let text = serialize_edge_list(&doc);
        assert_eq!(parse_edge_list(&text).unwrap(), doc);
        assert_eq!(parse_json(&serialize_json(&doc)).unwrap(), doc);
        assert_eq!(parse_any(&serialize_json(&doc)).unwrap(), doc);
        assert_eq!(parse_any(&text).unwrap(), doc);
    }

    #[test]
    fn json_errors_are_field_addressed() {
        let err =
            parse_json(r#"{"n_vertices": 2, "edges": [{"from": 0, "to": 1, "weight": 0.0}]}"#)
                .unwrap_err();
        assert!(
            matches!(err, FormatError::Semantic { ref location, .. } if location == "edges[0]")
        );
        assert!(matches!(parse_json("{"), Err(FormatError::Json(_))));
        let err = parse_json(r#"{"n_vertices": 1, "edges": [], "name": "a\nb"}"#).unwrap_err();
        assert!(matches!(err, FormatError::Semantic { ref location, .. } if location == "name"));
    }

    #[test]
    fn shortest_round_trip_weights() {
        let doc = GraphDocument::new(2, [(1, 0, 0.1 + 0.2)]);
        let text = serialize_edge_list(&doc);
        assert!(text.contains("0.30000000000000004"));
        assert_eq!(parse_edge_list(&text).unwrap(), doc);
    }
}
