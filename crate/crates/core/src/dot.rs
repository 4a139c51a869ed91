//! Graphviz export.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algorithm::{DistanceReport, Orientation};
use crate::format::GraphDocument;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("report covers {report} vertices with root v{root}, graph has {graph}")]
pub struct ReportMismatch {
    pub report: usize,
    pub root: usize,
    pub graph: usize,
}

/// Six significant digits in the style of `%g`; `inf` for `+∞`.
pub fn format_distance(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-4..6).contains(&exponent) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exponent.abs());
    }
    let decimals = (5 - exponent) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders the document as a `digraph`. With a report, every vertex carries
/// its distance and a dashed arrow links it with the root.
pub fn export_dot(
    doc: &GraphDocument,
    report: Option<&DistanceReport>,
) -> Result<String, ReportMismatch> {
    if let Some(r) = report {
        if r.len() != doc.n_vertices || r.root.0 >= doc.n_vertices {
            return Err(ReportMismatch {
                report: r.len(),
                root: r.root.0,
                graph: doc.n_vertices,
            });
        }
    }
    let name = doc.name.as_deref().unwrap_or("G");
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=LR;");
    for v in 0..doc.n_vertices {
        let label = doc.label(v);
        match report {
            Some(r) => {
                let d = format_distance(r.values[v]);
                let _ = writeln!(
                    out,
                    "  v{v} [label={}, distance={}];",
                    quote(&format!("{label}\nd={d}")),
                    quote(&d)
                );
            }
            None => {
                let _ = writeln!(out, "  v{v} [label={}];", quote(&label));
            }
        }
    }
    for e in &doc.edges {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label={}];",
            e.from,
            e.to,
            quote(&e.weight.to_string())
        );
    }
    if let Some(r) = report {
        let root = r.root.0;
        for v in (0..doc.n_vertices).filter(|&v| v != root && r.values[v].is_finite()) {
            let (a, b) = match r.orientation {
                Orientation::ToTarget => (v, root),
                Orientation::FromSource => (root, v),
            };
            let _ = writeln!(
                out,
                "  v{a} -> v{b} [style=dashed, color=gray, constraint=false, label={}];",
                quote(&format_distance(r.values[v]))
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::compute_distances_to_target;
    use crate::fixtures::greedy_trap;
    use crate::graph::VertexId;
    use crate::weights::WeightSequence;

    #[test]
    fn significant_digits() {
        assert_eq!(format_distance(7.25), "7.25");
        assert_eq!(format_distance(8.0), "8");
        assert_eq!(format_distance(1.0 / 3.0), "0.333333");
        assert_eq!(format_distance(15.0 / 9.0), "1.66667");
        assert_eq!(format_distance(123456.7), "123457");
        assert_eq!(format_distance(1234567.0), "1.23457e+06");
        assert_eq!(format_distance(0.0001), "0.0001");
        assert_eq!(format_distance(0.00001234), "1.234e-05");
        assert_eq!(format_distance(999999.7), "1e+06");
        assert_eq!(format_distance(f64::INFINITY), "inf");
        assert_eq!(format_distance(0.0), "0");
    }

    #[test]
    fn plain_export() {
        let doc = GraphDocument::new(2, [(1, 0, 5.0)]);
        assert_eq!(
            export_dot(&doc, None).unwrap(),
            "digraph \"G\" {\n  rankdir=LR;\n  v0 [label=\"v0\"];\n  v1 [label=\"v1\"];\n  v1 -> v0 [label=\"5\"];\n}\n"
        );
    }

    #[test]
    fn annotated_export() {
        let g = greedy_trap();
        let doc = GraphDocument::from_graph(&g);
        let w = WeightSequence::InversePower(1.0);
        let report = compute_distances_to_target(&g, &w, VertexId(0)).unwrap();
        let dot = export_dot(&doc, Some(&report)).unwrap();
        assert!(dot.contains("v5 [label=\"v5\\nd=7.25\", distance=\"7.25\"];"));
        assert!(dot.contains("v5 -> v0 [style=dashed"));
        assert_eq!(dot, export_dot(&doc, Some(&report)).unwrap());

        let small = GraphDocument::new(3, []);
        assert!(export_dot(&small, Some(&report)).is_err());
    }
}
