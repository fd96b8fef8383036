//! The `n+2` degree-sum closure.
//!
//! Nonadjacent cross pairs whose degree sum reaches `n + 2` are joined until no
//! such pair remains. The default scan order is lexicographic in `(x, y)`.

use serde::Serialize;

use crate::graph::{BipartiteGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureTrace {
    #[serde(skip)]
    pub result: BipartiteGraph,
    /// Added pairs (0-based) in the order they were joined.
    pub added_edges: Vec<(usize, usize)>,
    /// Scanning passes over the candidate list that added at least one edge.
    pub rounds: usize,
}

pub fn b_closure(g: &BipartiteGraph) -> Result<ClosureTrace, GraphError> {
    let n = g.balanced_n()?;
    let order: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    closure_in_order(g, &order)
}

/// Closure that scans candidate pairs in the given order on every pass.
///
/// `order` must list every cross pair exactly once.
pub fn b_closure_ordered(
    g: &BipartiteGraph,
    order: &[(usize, usize)],
) -> Result<ClosureTrace, GraphError> {
    let n = g.balanced_n()?;
    assert_eq!(order.len(), n * n, "order must list every cross pair");
    closure_in_order(g, order)
}

fn closure_in_order(
    g: &BipartiteGraph,
    order: &[(usize, usize)],
) -> Result<ClosureTrace, GraphError> {
    let n = g.balanced_n()?;
    let mut rows: Vec<u64> = g.x_rows().to_vec();
    let mut dx: Vec<usize> = (0..n).map(|i| g.x_degree(i)).collect();
    let mut dy: Vec<usize> = (0..n).map(|j| g.y_degree(j)).collect();
    let mut added = Vec::new();
    let mut rounds = 0;
    loop {
        let before = added.len();
        for &(i, j) in order {
            if rows[i] >> j & 1 == 0 && dx[i] + dy[j] >= n + 2 {
                rows[i] |= 1 << j;
                dx[i] += 1;
                dy[j] += 1;
                added.push((i, j));
            }
        }
        if added.len() == before {
            break;
        }
        rounds += 1;
    }
    let result = BipartiteGraph::from_rows(n, n, &rows)?;
    Ok(ClosureTrace { result, added_edges: added, rounds })
}

pub fn is_closed(g: &BipartiteGraph) -> Result<bool, GraphError> {
    let n = g.balanced_n()?;
    Ok(g.non_edges().all(|(i, j)| g.x_degree(i) + g.y_degree(j) < n + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_complete, make_q};

    #[test]
    fn c6_is_already_closed() {
        let c6 = BipartiteGraph::from_edge_list(
            3,
            3,
            [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)],
        )
        .unwrap();
        let trace = b_closure(&c6).unwrap();
        assert!(trace.added_edges.is_empty());
        assert_eq!(trace.rounds, 0);
        assert_eq!(trace.result, c6);
        assert!(is_closed(&c6).unwrap());
    }

    #[test]
    fn nearly_complete_fills_in() {
        let k44 = make_complete(4, 4).unwrap();
        let g = k44.without_edge(2, 1);
        let trace = b_closure(&g).unwrap();
        assert_eq!(trace.added_edges, vec![(2, 1)]);
        assert_eq!(trace.result, k44);
        assert!(!is_closed(&g).unwrap());
        assert!(is_closed(&k44).unwrap());
    }

    #[test]
    fn q_graphs_are_closed() {
        for (n, t) in [(5, 2), (6, 2), (7, 3)] {
            let q = make_q(n, t).unwrap();
            assert!(b_closure(&q).unwrap().added_edges.is_empty());
            assert!(is_closed(&q).unwrap());
        }
    }

    #[test]
    fn rejects_unbalanced() {
        let g = make_complete(3, 2).unwrap();
        assert!(b_closure(&g).is_err());
        assert!(is_closed(&g).is_err());
    }

    #[test]
    fn cascade_takes_several_rounds() {
        // Each addition raises degrees enough to unlock the next pair.
        let k55 = make_complete(5, 5).unwrap();
        let g = k55.without_edge(0, 0).without_edge(0, 1).without_edge(1, 0);
        let trace = b_closure(&g).unwrap();
        assert!(trace.result.is_subgraph_of(&k55));
        assert!(g.is_subgraph_of(&trace.result));
        assert!(is_closed(&trace.result).unwrap());
    }
}
