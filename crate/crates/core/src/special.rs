//! Stronger pruning for power-law weights `W_t = 1/t^k`, `k >= 1`.
//!
//! Both orders compare total distances instead of weight sums:
//!
//! * order 1: `p ≼¹ q` iff `p.len >= q.len` and `d(p) <= d(q)`;
//! * order 2: `p ≼² q` iff `p.len <= q.len` and `d(p) <= d(q)`.
//!
//! Discarding `q` is only safe when every future extension edge is heavy
//! enough (order 1) or light enough (order 2) compared with the paths already
//! summarised by the labels. The checkable sufficient condition is edge
//! monotonicity along consecutive edges, read in the direction in which
//! paths grow:
//!
//! | orientation    | growth    | order 1 needs   | order 2 needs   |
//! |----------------|-----------|-----------------|-----------------|
//! | `FromSource`   | append    | non-decreasing  | non-increasing  |
//! | `ToTarget`     | prepend   | non-increasing  | non-decreasing  |
//!
//! where "non-decreasing" means `φ(a,b) <= φ(b,c)` for all `(a,b), (b,c) ∈ E`.

use std::fmt;

use crate::algorithm::{
    AlgorithmError, DistanceReport, LabelEngine, Orientation, Outcome, Pruning,
};
use crate::graph::{Edge, VertexId, WeightedDigraph};
use crate::pareto::{Label, LabelSet};
use crate::weights::WeightSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialOrder {
    Order1,
    Order2,
}

impl fmt::Display for SpecialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialOrder::Order1 => f.write_str("order1"),
            SpecialOrder::Order2 => f.write_str("order2"),
        }
    }
}

/// Result of checking every pair of consecutive edges `(a,b), (b,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MonotonicityReport {
    /// First pair with `φ(a,b) > φ(b,c)`.
    pub nondecreasing_violation: Option<(Edge, Edge)>,
    /// First pair with `φ(a,b) < φ(b,c)`.
    pub nonincreasing_violation: Option<(Edge, Edge)>,
}

impl MonotonicityReport {
    /// `φ(a,b) <= φ(b,c)` on every consecutive pair.
    pub fn nondecreasing_ok(&self) -> bool {
        self.nondecreasing_violation.is_none()
    }

    /// `φ(a,b) >= φ(b,c)` on every consecutive pair.
    pub fn nonincreasing_ok(&self) -> bool {
        self.nonincreasing_violation.is_none()
    }

    /// Evidence that `order` may prune runs in `orientation` on the checked graph.
    pub fn grant(
        &self,
        order: SpecialOrder,
        orientation: Orientation,
    ) -> Result<Grant, AlgorithmError> {
        let needs_nondecreasing = matches!(
            (order, orientation),
            (SpecialOrder::Order1, Orientation::FromSource)
                | (SpecialOrder::Order2, Orientation::ToTarget)
        );
        let violation = if needs_nondecreasing {
            self.nondecreasing_violation
        } else {
            self.nonincreasing_violation
        };
        match violation {
            None => Ok(Grant { order, orientation }),
            Some(pair) => Err(AlgorithmError::ConditionNotVerified {
                order,
                orientation,
                violation: Some(pair),
            }),
        }
    }
}

/// Proof token returned by [`MonotonicityReport::grant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grant {
    order: SpecialOrder,
    orientation: Orientation,
}

impl Grant {
    pub fn order(&self) -> SpecialOrder {
        self.order
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

/// Scans all consecutive edge pairs, in edge-list order.
pub fn check_edge_monotonicity(g: &WeightedDigraph) -> MonotonicityReport {
    let mut report = MonotonicityReport::default();
    for first in g.edges() {
        for &(c, second_weight) in g.outgoing_neighbors(first.to) {
            let second = Edge {
                from: first.to,
                to: c,
                weight: second_weight,
            };
            if first.weight > second.weight && report.nondecreasing_violation.is_none() {
                report.nondecreasing_violation = Some((*first, second));
            }
            if first.weight < second.weight && report.nonincreasing_violation.is_none() {
                report.nonincreasing_violation = Some((*first, second));
            }
        }
    }
    report
}

fn power_exponent(w: &WeightSequence, order: SpecialOrder) -> Result<f64, AlgorithmError> {
    match w.power_exponent() {
        Some(k) if k >= 1.0 => Ok(k),
        _ => Err(AlgorithmError::WeightFormUnsupported {
            order,
            weights: w.clone(),
        }),
    }
}

fn distances(p: &Label, q: &Label, w: &WeightSequence) -> Result<(f64, f64), AlgorithmError> {
    Ok((p.distance(w)?, q.distance(w)?))
}

/// `p ≼¹ q`.
pub fn dominates_order1(p: &Label, q: &Label, w: &WeightSequence) -> Result<bool, AlgorithmError> {
    power_exponent(w, SpecialOrder::Order1)?;
    let (dp, dq) = distances(p, q, w)?;
    Ok(p.len >= q.len && dp <= dq)
}

/// `p ≼² q`.
pub fn dominates_order2(p: &Label, q: &Label, w: &WeightSequence) -> Result<bool, AlgorithmError> {
    power_exponent(w, SpecialOrder::Order2)?;
    let (dp, dq) = distances(p, q, w)?;
    Ok(p.len <= q.len && dp <= dq)
}

/// Minimal elements under `order` among the Pareto front of `labels`.
///
/// Because `≼` implies `≼¹`, for order 1 this is the same set as the minimal
/// elements of `labels` itself. For order 2 it keeps the result inside the
/// Pareto front. Equal-distance ties keep the longer label for order 1 and
/// the shorter one for order 2. No monotonicity check happens here; see
/// [`filtered_front`].
pub fn front_under(
    labels: &LabelSet,
    order: SpecialOrder,
    w: &WeightSequence,
) -> Result<LabelSet, AlgorithmError> {
    power_exponent(w, order)?;
    let front = labels.pareto_filter();
    let mut scored = Vec::with_capacity(front.len());
    for label in front.iter() {
        scored.push((*label, label.distance(w)?));
    }
    // pareto fronts hold at most one label per length
    match order {
        SpecialOrder::Order1 => scored.sort_by_key(|s| std::cmp::Reverse(s.0.len)),
        SpecialOrder::Order2 => scored.sort_by_key(|s| s.0.len),
    }
    let mut best = f64::INFINITY;
    let mut kept = LabelSet::new();
    for (label, d) in scored {
        if d < best {
            kept.insert(label);
            best = d;
        }
    }
    Ok(kept)
}

/// [`front_under`] for the order a [`Grant`] was issued for.
pub fn filtered_front(
    labels: &LabelSet,
    grant: &Grant,
    w: &WeightSequence,
) -> Result<LabelSet, AlgorithmError> {
    front_under(labels, grant.order, w)
}

pub(crate) fn check_preconditions(
    g: &WeightedDigraph,
    w: &WeightSequence,
    order: SpecialOrder,
    orientation: Orientation,
) -> Result<Grant, AlgorithmError> {
    power_exponent(w, order)?;
    check_edge_monotonicity(g).grant(order, orientation)
}

/// Distances to `target` using `order` pruning. Refuses to run when the graph
/// does not satisfy the monotonicity condition for prepend growth.
pub fn compute_distances_specialized(
    g: &WeightedDigraph,
    w: &WeightSequence,
    target: VertexId,
    order: SpecialOrder,
) -> Result<DistanceReport, AlgorithmError> {
    Ok(run_specialized(g, w, target, order, Orientation::ToTarget)?.report)
}

/// Distances from `source` using `order` pruning (append growth).
pub fn compute_distances_from_source_specialized(
    g: &WeightedDigraph,
    w: &WeightSequence,
    source: VertexId,
    order: SpecialOrder,
) -> Result<DistanceReport, AlgorithmError> {
    Ok(run_specialized(g, w, source, order, Orientation::FromSource)?.report)
}

pub fn run_specialized(
    g: &WeightedDigraph,
    w: &WeightSequence,
    root: VertexId,
    order: SpecialOrder,
    orientation: Orientation,
) -> Result<Outcome, AlgorithmError> {
    LabelEngine::new(g, w)
        .orientation(orientation)
        .pruning(Pruning::Special(order))
        .run(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::compute_distances_from_source;
    use crate::fixtures::{five_paths, greedy_trap};

    fn l(sum: f64, len: u32) -> Label {
        Label::new(sum, len)
    }

    fn inv1() -> WeightSequence {
        WeightSequence::InversePower(1.0)
    }

    fn six_paths() -> LabelSet {
        vec![l(15.0, 3), l(18.0, 3), l(21.0, 3), l(13.0, 2), l(5.0, 1)].into()
    }

    #[test]
    fn monotonicity_checks() {
        let report = check_edge_monotonicity(&five_paths());
        assert!(report.nondecreasing_ok());
        assert!(!report.nonincreasing_ok());

        let report = check_edge_monotonicity(&greedy_trap());
        assert!(!report.nondecreasing_ok());
        let (a, b) = report.nondecreasing_violation.unwrap();
        assert!(a.weight > b.weight);
        assert_eq!(a.to, b.from);

        let single = WeightedDigraph::new(2, [(1, 0, 3.0)]).unwrap();
        let report = check_edge_monotonicity(&single);
        assert!(report.nondecreasing_ok() && report.nonincreasing_ok());
    }

    #[test]
    fn greedy_trap_first_violation_in_edge_order() {
        // edges are scanned sorted by (from, to): φ(v2,v1) = 4 > φ(v1,v0) = 2 comes
        // before φ(v5,v4) = 20 > φ(v4,v3) = 3
        let g = greedy_trap();
        let (a, b) = check_edge_monotonicity(&g).nondecreasing_violation.unwrap();
        assert_eq!((a.from.0, a.to.0, a.weight), (2, 1, 4.0));
        assert_eq!((b.from.0, b.to.0, b.weight), (1, 0, 2.0));
        assert!(g.weight(VertexId(5), VertexId(4)) > g.weight(VertexId(4), VertexId(3)));
    }

    #[test]
    fn order1_examples() {
        let w = inv1();
        assert!(dominates_order1(&l(15.0, 3), &l(5.0, 1), &w).unwrap());
        assert!(dominates_order1(&l(15.0, 3), &l(13.0, 2), &w).unwrap());
        assert!(!dominates_order1(&l(13.0, 2), &l(15.0, 3), &w).unwrap());
        assert!(matches!(
            dominates_order1(&l(1.0, 1), &l(1.0, 1), &WeightSequence::Constant(1.0)),
            Err(AlgorithmError::WeightFormUnsupported { .. })
        ));
        assert!(matches!(
            dominates_order1(&l(1.0, 1), &l(1.0, 1), &WeightSequence::InversePower(0.5)),
            Err(AlgorithmError::WeightFormUnsupported { .. })
        ));
    }

    #[test]
    fn order2_examples() {
        let w = inv1();
        assert!(dominates_order2(&l(5.0, 1), &l(15.0, 3), &w).unwrap());
        assert!(!dominates_order2(&l(13.0, 2), &l(5.0, 1), &w).unwrap());
        assert!(dominates_order2(&l(7.0, 2), &l(7.0, 2), &w).unwrap());
    }

    #[test]
    fn fronts() {
        let grant = check_edge_monotonicity(&five_paths())
            .grant(SpecialOrder::Order1, Orientation::FromSource)
            .unwrap();
        let w = inv1();
        assert_eq!(
            filtered_front(&six_paths(), &grant, &w)
                .unwrap()
                .sorted_pairs(),
            vec![(15.0, 3)]
        );
        assert!(filtered_front(&LabelSet::new(), &grant, &w)
            .unwrap()
            .is_empty());
        let single = LabelSet::singleton(l(4.0, 2));
        assert_eq!(filtered_front(&single, &grant, &w).unwrap(), single);

        let o2 = front_under(&six_paths(), SpecialOrder::Order2, &w).unwrap();
        assert_eq!(o2.sorted_pairs(), vec![(5.0, 1)]);
        assert!(front_under(&LabelSet::new(), SpecialOrder::Order2, &w)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn order2_front_stays_inside_pareto_front() {
        // (30,1) is not ≼²-dominated by (10,2), but it is ≼-dominated
        let set: LabelSet = vec![l(10.0, 2), l(30.0, 1)].into();
        let o2 = front_under(&set, SpecialOrder::Order2, &inv1()).unwrap();
        assert_eq!(o2.sorted_pairs(), vec![(10.0, 2)]);
    }

    #[test]
    fn grants_follow_growth_direction() {
        let report = check_edge_monotonicity(&five_paths());
        assert!(report
            .grant(SpecialOrder::Order1, Orientation::FromSource)
            .is_ok());
        assert!(report
            .grant(SpecialOrder::Order2, Orientation::ToTarget)
            .is_ok());
        assert!(report
            .grant(SpecialOrder::Order1, Orientation::ToTarget)
            .is_err());
        assert!(report
            .grant(SpecialOrder::Order2, Orientation::FromSource)
            .is_err());
    }

    #[test]
    fn five_paths_specialized_distance() {
        let g = five_paths();
        let w = inv1();
        let r =
            compute_distances_from_source_specialized(&g, &w, VertexId(0), SpecialOrder::Order1)
                .unwrap();
        // Q = P1 ⊔ (v5, v6) with φ(v5, v6) = 10
        assert_eq!(r.value(VertexId(6)), (15.0 + 10.0) / 4.0);
        let generic = compute_distances_from_source(&g, &w, VertexId(0)).unwrap();
        assert_eq!(r.values, generic.values);

        let out = run_specialized(
            &g,
            &w,
            VertexId(0),
            SpecialOrder::Order1,
            Orientation::FromSource,
        )
        .unwrap();
        assert_eq!(out.label_sets[5].sorted_pairs(), vec![(15.0, 3)]);
    }

    #[test]
    fn specialized_refuses_unjustified_runs() {
        let g = five_paths();
        let err = compute_distances_specialized(&g, &inv1(), VertexId(6), SpecialOrder::Order1)
            .unwrap_err();
        assert!(matches!(
            err,
            AlgorithmError::ConditionNotVerified {
                violation: Some(_),
                ..
            }
        ));
        let err = compute_distances_from_source_specialized(
            &g,
            &WeightSequence::Constant(1.0),
            VertexId(0),
            SpecialOrder::Order1,
        )
        .unwrap_err();
        assert!(matches!(err, AlgorithmError::WeightFormUnsupported { .. }));
    }

    #[test]
    fn chain_is_unaffected() {
        let g = WeightedDigraph::new(4, [(3, 2, 1.0), (2, 1, 2.0), (1, 0, 4.0)]).unwrap();
        let w = WeightSequence::InversePower(2.0);
        let specialised =
            compute_distances_from_source_specialized(&g, &w, VertexId(3), SpecialOrder::Order1)
                .unwrap();
        let generic = compute_distances_from_source(&g, &w, VertexId(3)).unwrap();
        assert_eq!(specialised.values, generic.values);
    }
}
