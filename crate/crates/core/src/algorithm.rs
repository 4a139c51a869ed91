//! Multi-objective label-correcting computation of the path-length-weighted
//! distance.
//!
//! Every vertex carries a set of `(sum, len)` labels, one per surviving path
//! class towards the root. Labels are pushed along reversed edges from the
//! root, each touched set is pruned to its Pareto front, and the pass is
//! repeated for the vertices whose sets changed. The distance of a vertex is
//! the smallest `W_len · sum` among its final labels.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, Path, VertexId, WeightedDigraph};
use crate::pareto::{combine_distances, extend, Label, LabelSet, ScoredLength};
use crate::special::{self, SpecialOrder};
use crate::weights::{WeightError, WeightSequence, WeightViolation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgorithmError {
    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    TargetOutOfRange { vertex: usize, n_vertices: usize },
    #[error("invalid weight sequence: {0}")]
    InvalidWeightSequence(#[from] WeightViolation),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error("{order} pruning needs W = 1/t^k with k >= 1, got {weights}")]
    WeightFormUnsupported {
        order: SpecialOrder,
        weights: WeightSequence,
    },
    #[error("{order} pruning is not justified for this graph ({orientation}){}", describe_violation(.violation))]
    ConditionNotVerified {
        order: SpecialOrder,
        orientation: Orientation,
        violation: Option<(Edge, Edge)>,
    },
}

fn describe_violation(violation: &Option<(Edge, Edge)>) -> String {
    match violation {
        Some((a, b)) => format!(": consecutive edges {a} and {b} break the monotonicity condition"),
        None => String::new(),
    }
}

/// Which way distances are measured relative to the root vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    /// `d(v, root)` for every `v`; paths grow by prepending edges.
    #[default]
    ToTarget,
    /// `d(root, v)` for every `v`; paths grow by appending edges.
    FromSource,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::ToTarget => f.write_str("distances to target"),
            Orientation::FromSource => f.write_str("distances from source"),
        }
    }
}

/// How the set of vertices to expand is chosen after each pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrontierRule {
    /// Vertices whose label set changed during the pass.
    #[default]
    Changed,
    /// Every reached vertex that was not expanded in the pass just finished.
    /// A vertex that gains labels while it is being expanded waits a pass,
    /// so with the pass cap this can miss the longest paths.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pruning {
    /// Plain `(sum, len)` dominance; valid for every non-increasing `W`.
    #[default]
    Pareto,
    /// Distance-based dominance for `W = 1/t^k`, gated on edge monotonicity.
    Special(SpecialOrder),
}

/// Label sets, frontier and pass counter of one run.
#[derive(Debug, Clone)]
pub struct AlgorithmState {
    label_sets: Vec<LabelSet>,
    frontier: BTreeSet<VertexId>,
    changed: BTreeSet<VertexId>,
    step: usize,
}

impl AlgorithmState {
    fn new(n_vertices: usize, root: VertexId) -> Self {
        let mut label_sets = vec![LabelSet::new(); n_vertices];
        label_sets[root.0] = LabelSet::singleton(Label::ORIGIN);
        AlgorithmState {
            label_sets,
            frontier: BTreeSet::from([root]),
            changed: BTreeSet::new(),
            step: 0,
        }
    }

    pub fn label_sets(&self) -> &[LabelSet] {
        &self.label_sets
    }

    pub fn frontier(&self) -> &BTreeSet<VertexId> {
        &self.frontier
    }

    /// Vertices whose set changed in the last completed pass.
    pub fn changed(&self) -> &BTreeSet<VertexId> {
        &self.changed
    }

    /// Number of completed passes.
    pub fn step(&self) -> usize {
        self.step
    }
}

/// Frontier for the next pass.
pub fn refresh_frontier(state: &AlgorithmState, rule: FrontierRule) -> BTreeSet<VertexId> {
    match rule {
        FrontierRule::Changed => state.changed.clone(),
        FrontierRule::Printed => state
            .label_sets
            .iter()
            .enumerate()
            .map(|(i, set)| (VertexId(i), set))
            .filter(|(v, set)| !set.is_empty() && !state.frontier.contains(v))
            .map(|(v, _)| v)
            .collect(),
    }
}

/// `min W_l · s` over a filtered label set; `+∞` when the set is empty.
pub fn extract_distance(labels: &LabelSet, w: &WeightSequence) -> Result<f64, WeightError> {
    labels.min_distance(w)
}

/// Hooks called while a run progresses.
pub trait Observer {
    /// After the set of `vertex` has been extended and pruned.
    fn after_filter(&mut self, _vertex: VertexId, _labels: &LabelSet) {}
    /// After each complete pass, once the next frontier has been chosen.
    fn after_pass(&mut self, _state: &AlgorithmState) {}
}

impl Observer for () {}

/// Per-vertex distances relative to one root.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub root: VertexId,
    pub orientation: Orientation,
    /// `+∞` marks vertices with no path to (or from) the root.
    pub values: Vec<f64>,
    /// Witness paths in the direction of measurement, when requested.
    pub witnesses: Option<Vec<Option<Path>>>,
}

impl DistanceReport {
    pub fn value(&self, v: VertexId) -> f64 {
        self.values[v.0]
    }

    pub fn witness(&self, v: VertexId) -> Option<&Path> {
        self.witnesses.as_ref()?.get(v.0)?.as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunStats {
    /// Labels that passed the duplicate guard, the root label included.
    pub labels_created: usize,
    /// Labels in the final sets.
    pub labels_retained: usize,
    pub passes: usize,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: DistanceReport,
    /// Final label set of every vertex. Under `FromSource` a label at `v`
    /// describes a path from the root to `v`.
    pub label_sets: Vec<LabelSet>,
    pub stats: RunStats,
}

/// Configurable runner for the label-correcting computation.
#[derive(Debug, Clone)]
pub struct LabelEngine<'a> {
    graph: &'a WeightedDigraph,
    weights: &'a WeightSequence,
    orientation: Orientation,
    pruning: Pruning,
    frontier: FrontierRule,
    witnesses: bool,
}

type ParentMap = HashMap<(u64, u32), Option<(VertexId, Label)>>;

impl<'a> LabelEngine<'a> {
    pub fn new(graph: &'a WeightedDigraph, weights: &'a WeightSequence) -> Self {
        LabelEngine {
            graph,
            weights,
            orientation: Orientation::default(),
            pruning: Pruning::default(),
            frontier: FrontierRule::default(),
            witnesses: false,
        }
    }

    pub fn orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn frontier(mut self, rule: FrontierRule) -> Self {
        self.frontier = rule;
        self
    }

    pub fn witnesses(mut self, on: bool) -> Self {
        self.witnesses = on;
        self
    }

    pub fn run(&self, root: VertexId) -> Result<Outcome, AlgorithmError> {
        self.run_observed(root, &mut ())
    }

    pub fn run_observed<O: Observer>(
        &self,
        root: VertexId,
        observer: &mut O,
    ) -> Result<Outcome, AlgorithmError> {
        let n = self.graph.n_vertices();
        if !self.graph.contains(root) {
            return Err(AlgorithmError::TargetOutOfRange {
                vertex: root.0,
                n_vertices: n,
            });
        }
        self.weights.validate(n.saturating_sub(1))?;
        if let Pruning::Special(order) = self.pruning {
            special::check_preconditions(self.graph, self.weights, order, self.orientation)?;
        }

        let reversed;
        let graph = match self.orientation {
            Orientation::ToTarget => self.graph,
            Orientation::FromSource => {
                reversed = self.graph.reversed();
                &reversed
            }
        };

        let mut state = AlgorithmState::new(n, root);
        let mut parents: Vec<ParentMap> = if self.witnesses {
            let mut maps = vec![ParentMap::new(); n];
            maps[root.0].insert(Label::ORIGIN.key(), None);
            maps
        } else {
            Vec::new()
        };
        let mut created = 1usize;

        let mut m = 1;
        while m <= n && !state.frontier.is_empty() {
            state.changed.clear();
            let frontier: Vec<VertexId> = state.frontier.iter().copied().collect();
            for v in frontier {
                for &(u, phi) in graph.incoming_neighbors(v) {
                    let source = state.label_sets[v.0].clone();
                    let before = state.label_sets[u.0].clone();
                    let target_set = &mut state.label_sets[u.0];
                    for label in source.iter() {
                        let candidate = extend(phi, label);
                        if target_set.insert(candidate) {
                            created += 1;
                            if self.witnesses {
                                parents[u.0]
                                    .entry(candidate.key())
                                    .or_insert(Some((v, *label)));
                            }
                        }
                    }
                    let filtered = self.filter(target_set)?;
                    *target_set = filtered;
                    observer.after_filter(u, target_set);
                    if *target_set != before {
                        state.changed.insert(u);
                    }
                }
            }
            state.frontier = refresh_frontier(&state, self.frontier);
            state.step += 1;
            m += 1;
            observer.after_pass(&state);
        }

        let mut values = Vec::with_capacity(n);
        for set in &state.label_sets {
            values.push(extract_distance(set, self.weights)?);
        }
        let witnesses = if self.witnesses {
            let mut paths = Vec::with_capacity(n);
            for (i, set) in state.label_sets.iter().enumerate() {
                let path = match set.argmin(self.weights)? {
                    Some(best) => {
                        let p = trace_witness(&parents, VertexId(i), best);
                        Some(match self.orientation {
                            Orientation::ToTarget => p,
                            Orientation::FromSource => p.reversed(),
                        })
                    }
                    None => None,
                };
                paths.push(path);
            }
            Some(paths)
        } else {
            None
        };

        let stats = RunStats {
            labels_created: created,
            labels_retained: state.label_sets.iter().map(LabelSet::len).sum(),
            passes: state.step,
        };
        Ok(Outcome {
            report: DistanceReport {
                root,
                orientation: self.orientation,
                values,
                witnesses,
            },
            label_sets: state.label_sets,
            stats,
        })
    }

    fn filter(&self, set: &LabelSet) -> Result<LabelSet, AlgorithmError> {
        match self.pruning {
            Pruning::Pareto => Ok(set.pareto_filter()),
            Pruning::Special(order) => Ok(special::front_under(set, order, self.weights)?),
        }
    }
}

fn trace_witness(parents: &[ParentMap], start: VertexId, label: Label) -> Path {
    let mut vertices = vec![start];
    let (mut v, mut label) = (start, label);
    while let Some(Some((next, next_label))) = parents[v.0].get(&label.key()) {
        vertices.push(*next);
        v = *next;
        label = *next_label;
    }
    Path::new(vertices).expect("witness starts at a vertex")
}

/// `d_φ(v, target)` for every vertex, with plain Pareto pruning.
pub fn compute_distances_to_target(
    g: &WeightedDigraph,
    w: &WeightSequence,
    target: VertexId,
) -> Result<DistanceReport, AlgorithmError> {
    Ok(LabelEngine::new(g, w).run(target)?.report)
}

/// `d_φ(source, v)` for every vertex, with plain Pareto pruning.
pub fn compute_distances_from_source(
    g: &WeightedDigraph,
    w: &WeightSequence,
    source: VertexId,
) -> Result<DistanceReport, AlgorithmError> {
    Ok(LabelEngine::new(g, w)
        .orientation(Orientation::FromSource)
        .run(source)?
        .report)
}

/// Single-label relaxation that combines distances with `⊞`.
///
/// Keeps only the best `(distance, len)` per vertex, which is exactly what
/// fails for this metric: the path through a neighbour's best label is not
/// necessarily the best path. Kept as a baseline for comparison.
pub fn greedy_bellman_ford_plwd(
    g: &WeightedDigraph,
    w: &WeightSequence,
    target: VertexId,
) -> Result<DistanceReport, AlgorithmError> {
    let n = g.n_vertices();
    if !g.contains(target) {
        return Err(AlgorithmError::TargetOutOfRange {
            vertex: target.0,
            n_vertices: n,
        });
    }
    w.validate(n.saturating_sub(1))?;

    let mut best: Vec<Option<(ScoredLength, Option<VertexId>)>> = vec![None; n];
    best[target.0] = Some((
        ScoredLength {
            distance: 0.0,
            len: 0,
        },
        None,
    ));
    for &u in g.topological_order().iter().rev() {
        if u == target {
            continue;
        }
        for &(v, phi) in g.outgoing_neighbors(u) {
            let Some((tail, _)) = best[v.0] else { continue };
            let step = ScoredLength {
                distance: w.weight_at(1)? * phi,
                len: 1,
            };
            let candidate = if v == target {
                step
            } else {
                combine_distances(step, tail, w)?
            };
            if best[u.0].is_none_or(|(b, _)| candidate.distance < b.distance) {
                best[u.0] = Some((candidate, Some(v)));
            }
        }
    }

    let values = best
        .iter()
        .map(|b| b.map_or(f64::INFINITY, |(s, _)| s.distance))
        .collect();
    let witnesses = (0..n)
        .map(|i| {
            best[i]?;
            let mut vertices = vec![VertexId(i)];
            let mut v = VertexId(i);
            while let Some((_, Some(next))) = best[v.0] {
                vertices.push(next);
                v = next;
            }
            Path::new(vertices).ok()
        })
        .collect();
    Ok(DistanceReport {
        root: target,
        orientation: Orientation::ToTarget,
        values,
        witnesses: Some(witnesses),
    })
}
