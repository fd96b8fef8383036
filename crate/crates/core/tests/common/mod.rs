#![allow(dead_code)]

use proptest::prelude::*;
use whc_core::BipartiteGraph;

pub fn graph(n_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BipartiteGraph> {
    n_range.prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), n)
            .prop_map(move |rows| BipartiteGraph::from_rows(n, n, &rows).unwrap())
    })
}

pub fn graph_with_perms(
    n_range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (BipartiteGraph, Vec<usize>, Vec<usize>)> {
    n_range.prop_flat_map(|n| {
        (
            prop::collection::vec(0u64..(1 << n), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(move |(rows, px, py)| (BipartiteGraph::from_rows(n, n, &rows).unwrap(), px, py))
    })
}

pub fn c6() -> BipartiteGraph {
    BipartiteGraph::from_edge_list(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]).unwrap()
}
