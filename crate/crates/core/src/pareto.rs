//! Bicriteria labels `(s, l)` and the dominance order used to prune them.
//!
//! A label summarises one path: `sum` is the total edge weight, `len` the
//! number of edges. `p` dominates `q` when it is at least as long and no
//! heavier. Under any non-increasing weight sequence a dominated label can
//! never produce a strictly shorter distance after the same extension, so
//! each vertex only needs to keep the minimal elements of its label set.

use std::fmt;

use crate::weights::{WeightError, WeightSequence};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Label {
    pub sum: f64,
    pub len: u32,
}

impl Label {
    /// The label of the target's own single-vertex path.
    pub const ORIGIN: Label = Label { sum: 0.0, len: 0 };

    pub fn new(sum: f64, len: u32) -> Self {
        Label { sum, len }
    }

    /// `W_len · sum`.
    pub fn distance(&self, w: &WeightSequence) -> Result<f64, WeightError> {
        w.scaled(self.sum, self.len as usize)
    }

    /// Exact identity key; sums are never NaN.
    pub(crate) fn key(&self) -> (u64, u32) {
        (self.sum.to_bits(), self.len)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sum, self.len)
    }
}

/// `p ≼ q`: `p.len >= q.len` and `p.sum <= q.sum`.
pub fn dominates(p: &Label, q: &Label) -> bool {
    p.len >= q.len && p.sum <= q.sum
}

/// `φ ⊕ (s, l) = (s + φ, l + 1)`.
pub fn extend(phi: f64, label: &Label) -> Label {
    Label {
        sum: label.sum + phi,
        len: label.len + 1,
    }
}

/// A path summarised by its total distance instead of its weight sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredLength {
    pub distance: f64,
    pub len: u32,
}

/// Distance of a concatenation computed from the distances of its parts:
/// `W_{a+b} · (d_a / W_a + d_b / W_b)`. Both parts need at least one edge.
pub fn combine_distances(
    a: ScoredLength,
    b: ScoredLength,
    w: &WeightSequence,
) -> Result<ScoredLength, WeightError> {
    let (la, lb) = (a.len as usize, b.len as usize);
    let sum = a.distance / w.weight_at(la)? + b.distance / w.weight_at(lb)?;
    Ok(ScoredLength {
        distance: w.weight_at(la + lb)? * sum,
        len: a.len + b.len,
    })
}

/// Per-vertex collection of labels.
///
/// Sets produced by [`LabelSet::pareto_filter`] are antichains, sorted by
/// length descending (and therefore by sum descending).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabelSet {
    labels: Vec<Label>,
}

impl LabelSet {
    pub fn new() -> Self {
        LabelSet::default()
    }

    pub fn singleton(label: Label) -> Self {
        LabelSet {
            labels: vec![label],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.labels.iter()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.labels
    }

    pub fn contains(&self, label: &Label) -> bool {
        let key = label.key();
        self.labels.iter().any(|l| l.key() == key)
    }

    /// Adds `label` unless an identical one is present. Returns whether it was added.
    pub fn insert(&mut self, label: Label) -> bool {
        if self.contains(&label) {
            return false;
        }
        self.labels.push(label);
        true
    }

    /// Keeps exactly the labels not dominated by a distinct member.
    ///
    /// Sort by length descending then sum ascending; within one length only
    /// the lightest label can survive, and it survives iff it is strictly
    /// lighter than everything longer.
    pub fn pareto_filter(&self) -> LabelSet {
        let mut sorted = self.labels.clone();
        sorted.sort_by(|a, b| b.len.cmp(&a.len).then(a.sum.total_cmp(&b.sum)));
        let mut kept: Vec<Label> = Vec::with_capacity(sorted.len());
        let mut lightest_longer = f64::INFINITY;
        let mut i = 0;
        while i < sorted.len() {
            let head = sorted[i];
            if head.sum < lightest_longer {
                kept.push(head);
                lightest_longer = head.sum;
            }
            while i < sorted.len() && sorted[i].len == head.len {
                i += 1;
            }
        }
        LabelSet { labels: kept }
    }

    /// `min W_l · s` over the set; `+∞` when empty.
    pub fn min_distance(&self, w: &WeightSequence) -> Result<f64, WeightError> {
        let mut best = f64::INFINITY;
        for label in &self.labels {
            best = best.min(label.distance(w)?);
        }
        Ok(best)
    }

    /// Label attaining [`LabelSet::min_distance`], first in set order on ties.
    pub fn argmin(&self, w: &WeightSequence) -> Result<Option<Label>, WeightError> {
        let mut best: Option<(f64, Label)> = None;
        for label in &self.labels {
            let d = label.distance(w)?;
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, *label));
            }
        }
        Ok(best.map(|(_, l)| l))
    }

    /// Labels as `(sum, len)` pairs sorted by length then sum, for comparisons.
    pub fn sorted_pairs(&self) -> Vec<(f64, u32)> {
        let mut pairs: Vec<_> = self.labels.iter().map(|l| (l.sum, l.len)).collect();
        pairs.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.total_cmp(&b.0)));
        pairs
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut set = LabelSet::new();
        for label in iter {
            set.insert(label);
        }
        set
    }
}

impl<'a> IntoIterator for &'a LabelSet {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.labels.iter()
    }
}

impl From<Vec<Label>> for LabelSet {
    fn from(labels: Vec<Label>) -> Self {
        labels.into_iter().collect()
    }
}
