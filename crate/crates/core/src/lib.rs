//! Shortest paths under path-length-weighted distances on weighted DAGs.
//!
//! The distance of a path `P` with `l(P)` edges and edge-weight sum `s(P)`
//! is `W_{l(P)} · s(P)` for a fixed weight sequence `W`. Because the weight
//! depends on the whole length, the best path from a vertex need not extend
//! the best path of its successor, so [`algorithm::LabelEngine`] keeps a
//! Pareto front of `(sum, len)` labels per vertex instead of one value.

pub mod algorithm;
pub mod bench;
pub mod dot;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod pareto;
pub mod special;
pub mod weights;

pub use algorithm::{
    compute_distances_from_source, compute_distances_to_target, greedy_bellman_ford_plwd,
    AlgorithmError, DistanceReport, FrontierRule, LabelEngine, Orientation, Outcome, Pruning,
};
pub use format::{FormatError, GraphDocument};
pub use graph::{GraphError, Path, VertexId, WeightedDigraph};
pub use pareto::{Label, LabelSet};
pub use special::SpecialOrder;
pub use weights::{WeightError, WeightSequence};
