//! Bipartite graph carrier.
//!
//! A [`BipartiteGraph`] has parts `X = {x_0, .., x_{a-1}}` and
//! `Y = {y_0, .., y_{b-1}}` and stores one 64-bit row per vertex, so only
//! cross-part edges are representable and parts are capped at 64 vertices.
//! Indices are 0-based everywhere in the API; `Display` and error messages
//! use 1-based labels (`x1`, `y1`, ...).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest supported part size.
pub const MAX_PART: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge (x{}, y{}) is out of range for parts of size {a} and {b}", .x + 1, .y + 1)]
    EdgeOutOfRange { x: usize, y: usize, a: usize, b: usize },
    #[error("part size {0} exceeds the supported maximum of {MAX_PART}")]
    PartTooLarge(usize),
    #[error("operation requires a balanced graph, got parts of size {a} and {b}")]
    Unbalanced { a: usize, b: usize },
}

/// A vertex named by part and 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Vertex {
    X(usize),
    Y(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::X(i) => write!(f, "x{}", i + 1),
            Vertex::Y(j) => write!(f, "y{}", j + 1),
        }
    }
}

/// Immutable bipartite graph with bitset rows for both parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    a: usize,
    b: usize,
    /// `rows[i]` bit `j` set iff `x_i y_j` is an edge.
    rows: Vec<u64>,
    /// `cols[j]` bit `i` set iff `x_i y_j` is an edge.
    cols: Vec<u64>,
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[inline]
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

impl BipartiteGraph {
    pub fn empty(a: usize, b: usize) -> Result<Self, GraphError> {
        for size in [a, b] {
            if size > MAX_PART {
                return Err(GraphError::PartTooLarge(size));
            }
        }
        Ok(Self { a, b, rows: vec![0; a], cols: vec![0; b] })
    }

    /// Builds a graph from 0-based `(x, y)` pairs; duplicates collapse.
    pub fn from_edge_list(
        a: usize,
        b: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(a, b)?;
        for (x, y) in edges {
            if x >= a || y >= b {
                return Err(GraphError::EdgeOutOfRange { x, y, a, b });
            }
            g.rows[x] |= 1 << y;
            g.cols[y] |= 1 << x;
        }
        Ok(g)
    }

    /// Builds a graph from X-side rows. Bits at or above `b` are ignored.
    pub fn from_rows(a: usize, b: usize, rows: &[u64]) -> Result<Self, GraphError> {
        let mut g = Self::empty(a, b)?;
        assert_eq!(rows.len(), a, "row count must match part size");
        let mask = low_mask(b);
        for (i, &row) in rows.iter().enumerate() {
            g.rows[i] = row & mask;
            for j in bits(row & mask) {
                g.cols[j] |= 1 << i;
            }
        }
        Ok(g)
    }

    /// Balanced graph on `n + n` vertices whose edge `x_i y_j` is bit `i*n + j` of `code`.
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n * n <= 64, "bit codes only cover n <= 8");
        let mask = low_mask(n);
        let rows: Vec<u64> = (0..n).map(|i| (code >> (i * n)) & mask).collect();
        Self::from_rows(n, n, &rows).expect("n <= 8")
    }

    /// Inverse of [`BipartiteGraph::from_code`].
    pub fn code(&self) -> u64 {
        assert!(self.a == self.b && self.a * self.a <= 64);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &row)| acc | (row << (i * self.a)))
    }

    pub fn part_sizes(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn x_count(&self) -> usize {
        self.a
    }

    pub fn y_count(&self) -> usize {
        self.b
    }

    pub fn is_balanced(&self) -> bool {
        self.a == self.b
    }

    /// Common part size `n`, or an error when `a != b`.
    pub fn balanced_n(&self) -> Result<usize, GraphError> {
        if self.a == self.b {
            Ok(self.a)
        } else {
            Err(GraphError::Unbalanced { a: self.a, b: self.b })
        }
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    /// Neighbours of `x_i` as a bitset over Y.
    #[inline]
    pub fn x_row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Neighbours of `y_j` as a bitset over X.
    #[inline]
    pub fn y_row(&self, j: usize) -> u64 {
        self.cols[j]
    }

    pub fn x_rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn y_rows(&self) -> &[u64] {
        &self.cols
    }

    #[inline]
    pub fn x_degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    #[inline]
    pub fn y_degree(&self, j: usize) -> usize {
        self.cols[j].count_ones() as usize
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match v {
            Vertex::X(i) => self.x_degree(i),
            Vertex::Y(j) => self.y_degree(j),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Edges in lexicographic `(x, y)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| bits(row).map(move |j| (i, j)))
    }

    /// Nonadjacent cross pairs in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mask = low_mask(self.b);
        self.rows
            .iter()
            .enumerate()
            .flat_map(move |(i, &row)| bits(!row & mask).map(move |j| (i, j)))
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let x: Vec<usize> = (0..self.a).map(|i| self.x_degree(i)).collect();
        let y: Vec<usize> = (0..self.b).map(|j| self.y_degree(j)).collect();
        let mut values: Vec<usize> = x.iter().chain(&y).copied().collect();
        values.sort_unstable();
        DegreeSequence { values, x, y }
    }

    /// Minimum degree over all vertices; 0 for a graph without vertices.
    pub fn min_degree(&self) -> usize {
        let dx = (0..self.a).map(|i| self.x_degree(i));
        let dy = (0..self.b).map(|j| self.y_degree(j));
        dx.chain(dy).min().unwrap_or(0)
    }

    /// Minimum degree sum over nonadjacent cross pairs; `None` when complete.
    pub fn sigma(&self) -> Result<Option<usize>, GraphError> {
        self.balanced_n()?;
        Ok(self
            .non_edges()
            .map(|(i, j)| self.x_degree(i) + self.y_degree(j))
            .min())
    }

    /// Cross-part complement on the same vertex set.
    pub fn quasi_complement(&self) -> Self {
        let mask = low_mask(self.b);
        let rows: Vec<u64> = self.rows.iter().map(|r| !r & mask).collect();
        Self::from_rows(self.a, self.b, &rows).expect("same parts")
    }

    pub fn is_complete_bipartite(&self) -> bool {
        self.edge_count() == self.a * self.b
    }

    /// Numbers of X- and Y-vertices whose degree equals `n`.
    pub fn full_side_count(&self) -> Result<(usize, usize), GraphError> {
        let n = self.balanced_n()?;
        let fx = (0..n).filter(|&i| self.x_degree(i) == n).count();
        let fy = (0..n).filter(|&j| self.y_degree(j) == n).count();
        Ok((fx, fy))
    }

    /// True iff one part has at least `size` vertices adjacent to the whole other part,
    /// i.e. `K_{n,size}` sits inside the graph with its full side spanning a part.
    pub fn contains_full_block(&self, size: usize) -> Result<bool, GraphError> {
        let (fx, fy) = self.full_side_count()?;
        Ok(fx >= size || fy >= size)
    }

    pub fn with_edge(&self, x: usize, y: usize) -> Self {
        let mut g = self.clone();
        g.rows[x] |= 1 << y;
        g.cols[y] |= 1 << x;
        g
    }

    pub fn without_edge(&self, x: usize, y: usize) -> Self {
        let mut g = self.clone();
        g.rows[x] &= !(1 << y);
        g.cols[y] &= !(1 << x);
        g
    }

    /// True iff every edge of `self` is an edge of `other` (same labeling).
    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.part_sizes() == other.part_sizes()
            && self.rows.iter().zip(&other.rows).all(|(r, s)| r & !s == 0)
    }

    /// Relabels `x_i -> x_{px[i]}` and `y_j -> y_{py[j]}`.
    pub fn relabel(&self, px: &[usize], py: &[usize]) -> Self {
        assert_eq!(px.len(), self.a);
        assert_eq!(py.len(), self.b);
        Self::from_edge_list(self.a, self.b, self.edges().map(|(i, j)| (px[i], py[j])))
            .expect("permutation stays in range")
    }

    /// Same graph with the roles of X and Y exchanged.
    pub fn swap_parts(&self) -> Self {
        Self { a: self.b, b: self.a, rows: self.cols.clone(), cols: self.rows.clone() }
    }

    /// Connected components that contain at least one edge, as `(xs, ys)` bitsets.
    /// Isolated vertices are omitted.
    pub(crate) fn nontrivial_components(&self) -> Vec<(u64, u64)> {
        let mut seen_x = 0u64;
        let mut out = Vec::new();
        for start in 0..self.a {
            if seen_x >> start & 1 == 1 || self.rows[start] == 0 {
                continue;
            }
            let (mut xs, mut ys) = (1u64 << start, 0u64);
            loop {
                let ny = bits(xs).fold(ys, |acc, i| acc | self.rows[i]);
                let nx = bits(ny).fold(xs, |acc, j| acc | self.cols[j]);
                if nx == xs && ny == ys {
                    break;
                }
                xs = nx;
                ys = ny;
            }
            seen_x |= xs;
            out.push((xs, ys));
        }
        out
    }

    /// Induced subgraph on the given X and Y bitsets, reindexed in ascending order.
    pub(crate) fn induced(&self, xs: u64, ys: u64) -> Self {
        let xi: Vec<usize> = bits(xs).collect();
        let yj: Vec<usize> = bits(ys).collect();
        let rows: Vec<u64> = xi
            .iter()
            .map(|&i| {
                yj.iter()
                    .enumerate()
                    .filter(|(_, &j)| self.has_edge(i, j))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        Self::from_rows(xi.len(), yj.len(), &rows).expect("subset of parts")
    }

    /// Edge list with 1-based labels.
    pub fn edges_one_based(&self) -> Vec<(usize, usize)> {
        self.edges().map(|(i, j)| (i + 1, j + 1)).collect()
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph({}x{}, [", self.a, self.b)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{}y{}", i + 1, j + 1)?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Degrees of a graph, ascending, with per-part views indexed by vertex.
///
/// `values[0]` is `d_1` in the usual 1-based notation: use [`DegreeSequence::d`]
/// to read `d_k` without doing the index shift by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub values: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl DegreeSequence {
    /// `d_k` with 1-based `k`.
    pub fn d(&self, k: usize) -> usize {
        assert!(k >= 1 && k <= self.values.len(), "d_k needs 1 <= k <= {}", self.values.len());
        self.values[k - 1]
    }

    pub fn min(&self) -> usize {
        self.values.first().copied().unwrap_or(0)
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> BipartiteGraph {
        BipartiteGraph::from_edge_list(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])
            .unwrap()
    }

    #[test]
    fn construction_and_duplicates() {
        assert_eq!(c6().edge_count(), 6);
        let g = BipartiteGraph::from_edge_list(2, 2, [(0, 0), (0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        let k22 = BipartiteGraph::from_edge_list(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(k22.is_complete_bipartite());
    }

    #[test]
    fn out_of_range_names_pair() {
        let err = BipartiteGraph::from_edge_list(2, 2, [(0, 0), (2, 1)]).unwrap_err();
        assert_eq!(err, GraphError::EdgeOutOfRange { x: 2, y: 1, a: 2, b: 2 });
        assert!(err.to_string().contains("(x3, y2)"));
    }

    #[test]
    fn degree_sequence_of_c6_and_k43() {
        assert_eq!(c6().degree_sequence().values, vec![2; 6]);
        let k43 = BipartiteGraph::from_rows(4, 3, &[0b111; 4]).unwrap();
        let ds = k43.degree_sequence();
        assert_eq!(ds.values, vec![3, 3, 3, 3, 4, 4, 4]);
        assert_eq!(ds.d(1), 3);
        assert_eq!(ds.sum(), 2 * k43.edge_count());
    }

    #[test]
    fn sigma_cases() {
        assert_eq!(c6().sigma().unwrap(), Some(4));
        let k33 = BipartiteGraph::from_rows(3, 3, &[0b111; 3]).unwrap();
        assert_eq!(k33.sigma().unwrap(), None);
        let k43 = BipartiteGraph::from_rows(4, 3, &[0b111; 4]).unwrap();
        assert!(matches!(k43.sigma(), Err(GraphError::Unbalanced { a: 4, b: 3 })));
    }

    #[test]
    fn quasi_complement_of_c6_is_a_matching() {
        let h = c6().quasi_complement();
        let edges: Vec<_> = h.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(h.quasi_complement(), c6());
    }

    #[test]
    fn complete_edge_cases() {
        assert!(!BipartiteGraph::empty(1, 1).unwrap().is_complete_bipartite());
        assert!(BipartiteGraph::from_edge_list(1, 1, [(0, 0)]).unwrap().is_complete_bipartite());
        assert_eq!(c6().full_side_count().unwrap(), (0, 0));
    }

    #[test]
    fn code_round_trip() {
        for code in [0u64, 1, 0b1_0110_1101, 511] {
            assert_eq!(BipartiteGraph::from_code(3, code).code(), code);
        }
    }

    #[test]
    fn components_and_induced() {
        let h = c6().quasi_complement();
        let comps = h.nontrivial_components();
        assert_eq!(comps.len(), 3);
        let g = BipartiteGraph::from_edge_list(3, 3, [(0, 0), (0, 1), (2, 2)]).unwrap();
        let comps = g.nontrivial_components();
        assert_eq!(comps, vec![(0b001, 0b011), (0b100, 0b100)]);
        let sub = g.induced(0b001, 0b011);
        assert_eq!(sub.part_sizes(), (1, 2));
        assert_eq!(sub.edge_count(), 2);
    }

    #[test]
    fn display_is_one_based() {
        let g = BipartiteGraph::from_edge_list(2, 2, [(1, 0)]).unwrap();
        assert_eq!(g.to_string(), "BipartiteGraph(2x2, [x2y1])");
        assert_eq!(Vertex::Y(0).to_string(), "y1");
    }
}
