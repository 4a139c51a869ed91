//! Label counts and timings of the engines over a suite of graphs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algorithm::{
    greedy_bellman_ford_plwd, AlgorithmError, LabelEngine, Orientation, Pruning, RunStats,
};
use crate::format::GraphDocument;
use crate::graph::{GraphError, VertexId};
use crate::special::SpecialOrder;
use crate::weights::WeightSequence;

pub const CSV_HEADER: &str = "graph_id,engine,labels_created,labels_retained,wall_ns,digest";
pub const MISMATCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Generic,
    Order1,
    Order2,
    Greedy,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::Generic,
        Engine::Order1,
        Engine::Order2,
        Engine::Greedy,
    ];

    fn pruning(self) -> Option<Pruning> {
        match self {
            Engine::Generic => Some(Pruning::Pareto),
            Engine::Order1 => Some(Pruning::Special(SpecialOrder::Order1)),
            Engine::Order2 => Some(Pruning::Special(SpecialOrder::Order2)),
            Engine::Greedy => None,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Generic => "generic",
            Engine::Order1 => "order1",
            Engine::Order2 => "order2",
            Engine::Greedy => "greedy",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.to_string() == s)
            .ok_or_else(|| {
                format!("unknown engine {s:?}; expected generic, order1, order2 or greedy")
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub graph_id: String,
    pub engine: Engine,
    pub labels_created: usize,
    pub labels_retained: usize,
    pub wall_ns: u128,
    pub digest: String,
}

/// An engine that refused a graph because its preconditions failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub graph_id: String,
    pub engine: Engine,
    pub reason: AlgorithmError,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub skipped: Vec<Skipped>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub weights: WeightSequence,
    pub orientation: Orientation,
    /// `None` runs from every vertex and sums the counts.
    pub root: Option<usize>,
    pub engines: Vec<Engine>,
    /// Record `wall_ns = 0` so output is byte-reproducible.
    pub deterministic: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            weights: WeightSequence::default(),
            orientation: Orientation::ToTarget,
            root: None,
            engines: Engine::ALL.to_vec(),
            deterministic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("graph {graph_id}: {source}")]
    InvalidGraph {
        graph_id: String,
        source: GraphError,
    },
    #[error("graph {graph_id}: {source}")]
    Engine {
        graph_id: String,
        source: AlgorithmError,
    },
    #[error("graph {graph_id}: {engine} gives {got} at v{vertex} (root v{root}), generic gives {expected}")]
    EngineMismatch {
        graph_id: String,
        engine: Engine,
        root: usize,
        vertex: usize,
        expected: f64,
        got: f64,
    },
}

/// Hex SHA-256 of the distances written with nine significant digits.
pub fn distance_digest(values: &[f64]) -> String {
    let mut hasher = Sha256::new();
    for v in values {
        let text = if v.is_finite() {
            format!("{v:.8e}")
        } else {
            "inf".to_string()
        };
        hasher.update(text.as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

pub fn distances_agree(a: f64, b: f64, rel: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

#[derive(Clone)]
struct EngineRun {
    values: Vec<f64>,
    stats: RunStats,
    wall_ns: u128,
}

fn run_engine(
    doc: &GraphDocument,
    engine: Engine,
    config: &BenchConfig,
) -> Result<EngineRun, AlgorithmError> {
    let g = doc.to_graph().expect("validated by run_bench");
    let reversed = g.reversed();
    let roots: Vec<usize> = match config.root {
        Some(r) => vec![r],
        None => (0..g.n_vertices()).collect(),
    };
    let mut total = EngineRun {
        values: Vec::new(),
        stats: RunStats::default(),
        wall_ns: 0,
    };
    for root in roots {
        let root = VertexId(root);
        let start = Instant::now();
        let (values, stats) = match engine.pruning() {
            Some(pruning) => {
                let outcome = LabelEngine::new(&g, &config.weights)
                    .orientation(config.orientation)
                    .pruning(pruning)
                    .run(root)?;
                (outcome.report.values, outcome.stats)
            }
            None => {
                let graph = match config.orientation {
                    Orientation::ToTarget => &g,
                    Orientation::FromSource => &reversed,
                };
                let report = greedy_bellman_ford_plwd(graph, &config.weights, root)?;
                let reached = report.values.iter().filter(|d| d.is_finite()).count();
                let stats = RunStats {
                    labels_created: reached,
                    labels_retained: reached,
                    passes: 1,
                };
                (report.values, stats)
            }
        };
        total.wall_ns += start.elapsed().as_nanos();
        total.values.extend(values);
        total.stats.labels_created += stats.labels_created;
        total.stats.labels_retained += stats.labels_retained;
        total.stats.passes += stats.passes;
    }
    Ok(total)
}

/// Runs every configured engine on every graph. Engines other than the
/// greedy baseline must reproduce the generic distances.
pub fn run_bench(
    suite: &[(String, GraphDocument)],
    config: &BenchConfig,
) -> Result<BenchReport, BenchError> {
    let mut report = BenchReport::default();
    for (graph_id, doc) in suite {
        doc.to_graph().map_err(|source| BenchError::InvalidGraph {
            graph_id: graph_id.clone(),
            source,
        })?;
        let reference =
            run_engine(doc, Engine::Generic, config).map_err(|source| BenchError::Engine {
                graph_id: graph_id.clone(),
                source,
            })?;
        for &engine in &config.engines {
            let run = if engine == Engine::Generic {
                Ok(reference.clone())
            } else {
                run_engine(doc, engine, config)
            };
            let run = match run {
                Ok(run) => run,
                Err(reason @ AlgorithmError::ConditionNotVerified { .. }) => {
                    report.skipped.push(Skipped {
                        graph_id: graph_id.clone(),
                        engine,
                        reason,
                    });
                    continue;
                }
                Err(source) => {
                    return Err(BenchError::Engine {
                        graph_id: graph_id.clone(),
                        source,
                    })
                }
            };
            if engine != Engine::Greedy {
                let n = doc.n_vertices.max(1);
                for (i, (&expected, &got)) in reference.values.iter().zip(&run.values).enumerate() {
                    let (root, vertex) = (config.root.unwrap_or(i / n), i % n);
                    if !distances_agree(expected, got, MISMATCH_TOLERANCE) {
                        return Err(BenchError::EngineMismatch {
                            graph_id: graph_id.clone(),
                            engine,
                            root,
                            vertex,
                            expected,
                            got,
                        });
                    }
                }
            }
            report.records.push(BenchRecord {
                graph_id: graph_id.clone(),
                engine,
                labels_created: run.stats.labels_created,
                labels_retained: run.stats.labels_retained,
                wall_ns: if config.deterministic { 0 } else { run.wall_ns },
                digest: distance_digest(&run.values),
            });
        }
    }
    Ok(report)
}

pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writer.serialize(r).expect("in-memory write");
    }
    let body = writer.into_inner().expect("in-memory flush");
    out.push_str(std::str::from_utf8(&body).expect("csv output is UTF-8"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{five_paths, greedy_trap};
    use crate::generate::{gen_monotone_dag, WeightRange};

    fn suite_of(docs: Vec<GraphDocument>) -> Vec<(String, GraphDocument)> {
        docs.into_iter()
            .enumerate()
            .map(|(i, d)| (format!("g{i}"), d))
            .collect()
    }

    #[test]
    fn empty_suite() {
        let report = run_bench(&[], &BenchConfig::default()).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(write_csv(&report.records), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn monotone_suite_order1_retains_no_more() {
        let docs = (0..20)
            .map(|s| gen_monotone_dag(10, 0.4, s, WeightRange::default()).unwrap())
            .collect();
        let config = BenchConfig {
            orientation: Orientation::FromSource,
            engines: vec![Engine::Generic, Engine::Order1],
            ..BenchConfig::default()
        };
        let report = run_bench(&suite_of(docs), &config).unwrap();
        assert!(report.skipped.is_empty());
        for pair in report.records.chunks(2) {
            assert_eq!(pair[0].engine, Engine::Generic);
            assert_eq!(pair[1].engine, Engine::Order1);
            assert!(pair[1].labels_retained <= pair[0].labels_retained);
            assert_eq!(pair[0].digest, pair[1].digest);
        }
    }

    #[test]
    fn non_monotone_graph_is_skipped() {
        let suite = suite_of(vec![GraphDocument::from_graph(&greedy_trap())]);
        let config = BenchConfig {
            engines: vec![Engine::Order1],
            ..BenchConfig::default()
        };
        let report = run_bench(&suite, &config).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.skipped.len(), 1);
        assert!(matches!(
            report.skipped[0].reason,
            AlgorithmError::ConditionNotVerified { .. }
        ));
    }

    #[test]
    fn deterministic_csv() {
        let suite = suite_of(vec![
            GraphDocument::from_graph(&greedy_trap()),
            GraphDocument::from_graph(&five_paths()),
        ]);
        let config = BenchConfig {
            deterministic: true,
            ..BenchConfig::default()
        };
        let a = write_csv(&run_bench(&suite, &config).unwrap().records);
        let b = write_csv(&run_bench(&suite, &config).unwrap().records);
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert!(a.lines().nth(1).unwrap().starts_with("g0,generic,"));
    }

    #[test]
    fn digests() {
        assert_eq!(
            distance_digest(&[1.0, 2.0]),
            distance_digest(&[1.0, 2.0 + 1e-12])
        );
        assert_ne!(
            distance_digest(&[1.0, 2.0]),
            distance_digest(&[1.0, f64::INFINITY])
        );
        assert!(distances_agree(f64::INFINITY, f64::INFINITY, 1e-9));
        assert!(!distances_agree(1.0, f64::INFINITY, 1e-9));
        assert!(distances_agree(0.0, 0.0, 1e-9));
    }
}
