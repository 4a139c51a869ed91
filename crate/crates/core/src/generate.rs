//! Seeded graph families: trees, centred stars, random DAGs and
//! edge-monotone DAGs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::format::GraphDocument;
use crate::special::check_edge_monotonicity;

const MONOTONE_ATTEMPTS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// Closed interval of edge weights. With `integral`, only whole numbers are
/// drawn, which produces ties between paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightRange {
    pub lo: f64,
    pub hi: f64,
    pub integral: bool,
}

impl WeightRange {
    pub fn new(lo: f64, hi: f64) -> Self {
        WeightRange {
            lo,
            hi,
            integral: false,
        }
    }

    pub fn integers(lo: u32, hi: u32) -> Self {
        WeightRange {
            lo: lo as f64,
            hi: hi as f64,
            integral: true,
        }
    }

    fn check(&self) -> Result<(), GenError> {
        let ok = self.lo > 0.0
            && self.hi.is_finite()
            && self.lo <= self.hi
            && (!self.integral || self.lo.ceil() <= self.hi.floor());
        if ok {
            Ok(())
        } else {
            Err(GenError::InvalidParams(format!(
                "weight range [{}, {}] must be positive and non-empty",
                self.lo, self.hi
            )))
        }
    }

    fn sample_up_to(&self, rng: &mut ChaCha8Rng, cap: f64) -> f64 {
        let hi = self.hi.min(cap);
        if self.integral {
            let (lo, hi) = (self.lo.ceil(), hi.floor().max(self.lo.ceil()));
            rng.gen_range(lo as u64..=hi as u64) as f64
        } else if hi <= self.lo {
            self.lo
        } else {
            rng.gen_range(self.lo..=hi)
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        self.sample_up_to(rng, f64::INFINITY)
    }
}

impl Default for WeightRange {
    fn default() -> Self {
        WeightRange::integers(1, 10)
    }
}

fn check_n(n: usize) -> Result<(), GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("need at least one vertex".into()));
    }
    Ok(())
}

fn check_prob(p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::InvalidParams(format!(
            "probability {p} outside [0, 1]"
        )))
    }
}

/// Random recursive tree rooted at `v0`; every edge points toward the root.
pub fn gen_tree(n: usize, seed: u64, range: WeightRange) -> Result<GraphDocument, GenError> {
    check_n(n)?;
    range.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize, f64)> = (1..n)
        .map(|i| {
            let parent = rng.gen_range(0..i);
            (i, parent, range.sample(&mut rng))
        })
        .collect();
    Ok(GraphDocument::new(n, edges).with_name(format!("tree-n{n}-s{seed}")))
}

/// Centre `v0` with an edge from every other vertex, plus leaf-to-leaf edges
/// `i -> j` (`i > j`) drawn with probability `extra_prob`.
pub fn gen_star(
    n: usize,
    extra_prob: f64,
    seed: u64,
    range: WeightRange,
) -> Result<GraphDocument, GenError> {
    check_n(n)?;
    check_prob(extra_prob)?;
    range.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((i, 0, range.sample(&mut rng)));
        for j in 1..i {
            if rng.gen_bool(extra_prob) {
                edges.push((i, j, range.sample(&mut rng)));
            }
        }
    }
    Ok(GraphDocument::new(n, edges).with_name(format!("star-n{n}-s{seed}")))
}

/// Each pair is joined with probability `edge_prob`, oriented along a random
/// permutation of the vertices.
pub fn gen_random_dag(
    n: usize,
    edge_prob: f64,
    seed: u64,
    range: WeightRange,
) -> Result<GraphDocument, GenError> {
    check_n(n)?;
    check_prob(edge_prob)?;
    range.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = random_topology(n, edge_prob, &mut rng)
        .into_iter()
        .map(|(a, b)| (a, b, range.sample(&mut rng)))
        .collect::<Vec<_>>();
    Ok(GraphDocument::new(n, edges).with_name(format!("dag-n{n}-p{edge_prob}-s{seed}")))
}

/// Random DAG whose consecutive edges never decrease in weight. Reverse the
/// result for the non-increasing family.
pub fn gen_monotone_dag(
    n: usize,
    edge_prob: f64,
    seed: u64,
    range: WeightRange,
) -> Result<GraphDocument, GenError> {
    check_n(n)?;
    check_prob(edge_prob)?;
    range.check()?;
    for attempt in 0..MONOTONE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let order = permutation(n, &mut rng);
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let pairs = random_topology_along(&order, edge_prob, &mut rng);

        // Weights are assigned from the sinks back, each edge bounded by the
        // lightest edge leaving its head.
        let mut min_out = vec![f64::INFINITY; n];
        let mut weighted: Vec<(usize, usize, f64)> = Vec::with_capacity(pairs.len());
        let mut by_tail = pairs.clone();
        by_tail.sort_by_key(|&(a, b)| (std::cmp::Reverse(position[a]), position[b]));
        for (a, b) in by_tail {
            let w = range.sample_up_to(&mut rng, min_out[b]);
            min_out[a] = min_out[a].min(w);
            weighted.push((a, b, w));
        }
        weighted.sort_by_key(|&(a, b, _)| (position[a], position[b]));

        let doc = GraphDocument::new(n, weighted)
            .with_name(format!("monotone-n{n}-p{edge_prob}-s{seed}"));
        let g = doc.to_graph().expect("oriented along a permutation");
        if check_edge_monotonicity(&g).nondecreasing_ok() {
            return Ok(doc);
        }
    }
    Err(GenError::InvalidParams(format!(
        "no monotone graph after {MONOTONE_ATTEMPTS} attempts"
    )))
}

fn permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

fn random_topology(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let order = permutation(n, rng);
    random_topology_along(&order, p, rng)
}

fn random_topology_along(order: &[usize], p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if rng.gen_bool(p) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    pairs
}
