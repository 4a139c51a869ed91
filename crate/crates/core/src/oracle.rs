//! Brute-force references used to check the label-correcting engine.
//!
//! Nothing here goes through the pruning code: paths are enumerated
//! exhaustively and fronts are computed with the quadratic definition.

use thiserror::Error;

use crate::graph::{Path, VertexId, WeightedDigraph};
use crate::pareto::{Label, LabelSet};
use crate::weights::{WeightError, WeightSequence};

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("more than {cap} paths between {from} and {to}; refusing to enumerate")]
    ExplosionGuard {
        from: VertexId,
        to: VertexId,
        cap: usize,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error(transparent)]
    Weights(#[from] WeightError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathRecord {
    pub path: Path,
    pub sum: f64,
    pub len: usize,
}

impl PathRecord {
    pub fn distance(&self, w: &WeightSequence) -> Result<f64, WeightError> {
        if self.len == 0 {
            return Ok(0.0);
        }
        Ok(w.weight_at(self.len)? * self.sum)
    }
}

/// Every path from `from` to `to`, each exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct PathInventory {
    pub from: VertexId,
    pub to: VertexId,
    pub paths: Vec<PathRecord>,
}

impl PathInventory {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `(sum, len)` of every path, duplicates included.
    pub fn pairs(&self) -> Vec<(f64, u32)> {
        self.paths.iter().map(|r| (r.sum, r.len as u32)).collect()
    }
}

/// Depth-first enumeration with neighbours in ascending order.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_PATH_CAP,
        }
    }
}

impl Enumerator {
    pub fn with_cap(cap: usize) -> Self {
        Enumerator { cap }
    }

    pub fn all_paths(
        &self,
        g: &WeightedDigraph,
        from: VertexId,
        to: VertexId,
    ) -> Result<PathInventory, OracleError> {
        for v in [from, to] {
            if !g.contains(v) {
                return Err(OracleError::VertexOutOfRange(v));
            }
        }
        let reaches = can_reach(g, to);
        let mut paths = Vec::new();
        if reaches[from.0] {
            let mut stack = vec![from];
            self.dfs(g, to, &reaches, &mut stack, 0.0, &mut paths)?;
        }
        Ok(PathInventory { from, to, paths })
    }

    fn dfs(
        &self,
        g: &WeightedDigraph,
        to: VertexId,
        reaches: &[bool],
        stack: &mut Vec<VertexId>,
        sum: f64,
        out: &mut Vec<PathRecord>,
    ) -> Result<(), OracleError> {
        let here = *stack.last().expect("stack starts non-empty");
        if here == to {
            if out.len() >= self.cap {
                return Err(OracleError::ExplosionGuard {
                    from: stack[0],
                    to,
                    cap: self.cap,
                });
            }
            out.push(PathRecord {
                path: Path::new(stack.clone()).expect("non-empty"),
                sum,
                len: stack.len() - 1,
            });
            return Ok(());
        }
        for &(next, phi) in g.outgoing_neighbors(here) {
            if reaches[next.0] {
                stack.push(next);
                self.dfs(g, to, reaches, stack, sum + phi, out)?;
                stack.pop();
            }
        }
        Ok(())
    }
}

fn can_reach(g: &WeightedDigraph, to: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.n_vertices()];
    seen[to.0] = true;
    let mut queue = vec![to];
    while let Some(v) = queue.pop() {
        for &(u, _) in g.incoming_neighbors(v) {
            if !seen[u.0] {
                seen[u.0] = true;
                queue.push(u);
            }
        }
    }
    seen
}

pub fn enumerate_all_paths(
    g: &WeightedDigraph,
    from: VertexId,
    to: VertexId,
) -> Result<PathInventory, OracleError> {
    Enumerator::default().all_paths(g, from, to)
}

/// `inf { W_l(P) · s(P) }` over all paths; `+∞` when there are none.
pub fn brute_force_distance(
    g: &WeightedDigraph,
    w: &WeightSequence,
    from: VertexId,
    to: VertexId,
) -> Result<f64, OracleError> {
    let inventory = enumerate_all_paths(g, from, to)?;
    let mut best = f64::INFINITY;
    for record in &inventory.paths {
        best = best.min(record.distance(w)?);
    }
    Ok(best)
}

/// Pareto front of every path's `(sum, len)`.
pub fn brute_force_front(
    g: &WeightedDigraph,
    from: VertexId,
    to: VertexId,
) -> Result<LabelSet, OracleError> {
    let inventory = enumerate_all_paths(g, from, to)?;
    Ok(definitional_front(&inventory.pairs())
        .into_iter()
        .map(|(s, l)| Label::new(s, l))
        .collect())
}

/// `{ q : no distinct p with p.len >= q.len and p.sum <= q.sum }`, by direct
/// pairwise comparison. Duplicates are merged first. Sorted by length, then sum.
pub fn definitional_front(pairs: &[(f64, u32)]) -> Vec<(f64, u32)> {
    let mut unique: Vec<(f64, u32)> = Vec::new();
    for &p in pairs {
        if !unique.iter().any(|&u| u.0 == p.0 && u.1 == p.1) {
            unique.push(p);
        }
    }
    let mut front: Vec<(f64, u32)> = unique
        .iter()
        .copied()
        .filter(|&(s, l)| {
            !unique
                .iter()
                .any(|&(s2, l2)| (s2, l2) != (s, l) && l2 >= l && s2 <= s)
        })
        .collect();
    front.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.total_cmp(&b.0)));
    front
}

/// True when no member is dominated by a distinct member.
pub fn is_antichain(labels: &LabelSet) -> bool {
    let pairs: Vec<(f64, u32)> = labels.iter().map(|l| (l.sum, l.len)).collect();
    definitional_front(&pairs).len() == pairs.len()
}

/// Ordinary single-target shortest path by edge-weight sum, relaxing
/// vertices in reverse topological order.
pub fn classic_shortest_path(g: &WeightedDigraph, target: VertexId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.n_vertices()];
    dist[target.0] = 0.0;
    for &u in g.topological_order().iter().rev() {
        for &(v, phi) in g.outgoing_neighbors(u) {
            let via = phi + dist[v.0];
            if via < dist[u.0] {
                dist[u.0] = via;
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{five_paths, greedy_trap};

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn enumerates_greedy_trap() {
        let g = greedy_trap();
        let inv = enumerate_all_paths(&g, v(5), v(0)).unwrap();
        let paths: Vec<&Path> = inv.paths.iter().map(|r| &r.path).collect();
        assert_eq!(
            paths,
            vec![
                &Path::from_indices(&[5, 4, 2, 1, 0]).unwrap(),
                &Path::from_indices(&[5, 4, 3, 0]).unwrap(),
            ]
        );
        let same = enumerate_all_paths(&g, v(3), v(3)).unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same.paths[0].len, 0);
        assert!(enumerate_all_paths(&g, v(0), v(5)).unwrap().is_empty());
    }

    #[test]
    fn distances() {
        let w = WeightSequence::InversePower(1.0);
        assert_eq!(
            brute_force_distance(&greedy_trap(), &w, v(5), v(0)).unwrap(),
            7.25
        );
        assert_eq!(
            brute_force_distance(&five_paths(), &w, v(0), v(5)).unwrap(),
            5.0
        );
        assert_eq!(
            brute_force_distance(&greedy_trap(), &w, v(0), v(5)).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn fronts() {
        assert_eq!(
            brute_force_front(&five_paths(), v(0), v(5))
                .unwrap()
                .sorted_pairs(),
            vec![(5.0, 1), (13.0, 2), (15.0, 3)]
        );
        assert_eq!(
            brute_force_front(&five_paths(), v(2), v(2))
                .unwrap()
                .sorted_pairs(),
            vec![(0.0, 0)]
        );
        assert!(brute_force_front(&five_paths(), v(6), v(0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn classic() {
        let d = classic_shortest_path(&greedy_trap(), v(0));
        assert_eq!(d[4], 4.0);
        assert_eq!(d[0], 0.0);
        assert_eq!(d[5], 24.0);
    }

    #[test]
    fn explosion_guard() {
        // 2^k paths through a ladder of diamonds
        let mut edges = Vec::new();
        let k = 6;
        for i in 0..k {
            let (a, b, c, d) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
            edges.extend([(a, b, 1.0), (a, c, 1.0), (b, d, 1.0), (c, d, 1.0)]);
        }
        let g = WeightedDigraph::new(3 * k + 1, edges).unwrap();
        assert_eq!(
            Enumerator::default()
                .all_paths(&g, v(0), v(3 * k))
                .unwrap()
                .len(),
            64
        );
        assert!(matches!(
            Enumerator::with_cap(10).all_paths(&g, v(0), v(3 * k)),
            Err(OracleError::ExplosionGuard { cap: 10, .. })
        ));
    }

    #[test]
    fn definitional_front_merges_duplicates() {
        assert_eq!(definitional_front(&[(7.0, 2), (7.0, 2)]), vec![(7.0, 2)]);
        assert!(definitional_front(&[]).is_empty());
    }
}
