//! Small reference graphs with hand-checkable distances.

use crate::graph::{Path, WeightedDigraph};
use crate::weights::WeightSequence;

/// Six vertices where following each neighbour's best distance gives the
/// wrong answer: with `W_t = 1/t`, `d(v5, v0) = 29/4 = 7.25` through
/// `(v5, v4, v2, v1, v0)`, although `v4`'s own best path is `(v4, v3, v0)`.
pub const GREEDY_TRAP_EDGES: [(usize, usize, f64); 6] = [
    (5, 4, 20.0),
    (4, 3, 3.0),
    (3, 0, 1.0),
    (4, 2, 3.0),
    (2, 1, 4.0),
    (1, 0, 2.0),
];

/// Seven vertices, every consecutive edge pair non-decreasing. The five
/// paths from `v0` to `v5` have `(sum, len)` equal to (15,3), (18,3),
/// (21,3), (13,2) and (5,1); `v6` hangs off `v5` with weight 10.
pub const FIVE_PATHS_EDGES: [(usize, usize, f64); 10] = [
    (0, 1, 3.0),
    (1, 3, 4.0),
    (3, 5, 8.0),
    (0, 2, 4.0),
    (2, 3, 6.0),
    (2, 4, 8.0),
    (4, 5, 9.0),
    (0, 3, 5.0),
    (0, 5, 5.0),
    (5, 6, 10.0),
];

pub fn greedy_trap() -> WeightedDigraph {
    WeightedDigraph::new(6, GREEDY_TRAP_EDGES).expect("fixture is a valid DAG")
}

/// Builds the graph and checks the published sums, lengths and averages of
/// the five `v0 -> v5` paths before handing it out.
pub fn five_paths() -> WeightedDigraph {
    let g = WeightedDigraph::new(7, FIVE_PATHS_EDGES).expect("fixture is a valid DAG");
    let w = WeightSequence::InversePower(1.0);
    let published: [(&[usize], f64, usize, f64); 5] = [
        (&[0, 1, 3, 5], 15.0, 3, 5.0),
        (&[0, 2, 3, 5], 18.0, 3, 6.0),
        (&[0, 2, 4, 5], 21.0, 3, 7.0),
        (&[0, 3, 5], 13.0, 2, 6.5),
        (&[0, 5], 5.0, 1, 5.0),
    ];
    for (vertices, sum, len, distance) in published {
        let p = Path::from_indices(vertices).expect("non-empty");
        assert_eq!(g.path_sum(&p).expect("fixture path"), sum);
        assert_eq!(p.len(), len);
        assert_eq!(g.path_distance(&p, &w).expect("fixture path"), distance);
    }
    g
}
