//! Brute-force Hamilton path search and the weak Hamilton-connectedness oracle.
//!
//! Vertices are numbered `x_i -> i`, `y_j -> n + j`. Two backends:
//!
//! * bitmask DP over `(visited set, last vertex)` from a fixed source, which
//!   answers every target at once (used for `2n <= 24`);
//! * depth-first search with fail-first neighbour ordering (used beyond that,
//!   up to `2n <= 32`).

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{bits, BipartiteGraph, GraphError, Vertex};

/// Largest `2n` handled by the DP backend.
pub const DP_LIMIT: usize = 24;
/// Largest `2n` the oracle accepts at all.
pub const HARD_LIMIT: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {0} vertices; the oracle refuses more than {HARD_LIMIT}")]
    TooLarge(usize),
    #[error("vertex index out of range")]
    VertexOutOfRange,
    #[error("x{}y{} is not an edge of the graph", .0 + 1, .1 + 1)]
    NotAnEdge(usize, usize),
    #[error("search cancelled")]
    Cancelled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// DP up to [`DP_LIMIT`] vertices, DFS above.
    #[default]
    Auto,
    /// DFS regardless of size.
    Dfs,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions<'a> {
    pub backend: Backend,
    /// Collect one Hamilton path per cross pair when the graph is weakly Hamilton-connected.
    pub witnesses: bool,
    pub cancel: Option<&'a AtomicBool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub weakly_hc: bool,
    /// Keyed by 0-based `(x, y)`; present only when requested and the answer is yes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_paths: Option<BTreeMap<(usize, usize), Vec<Vertex>>>,
    /// First failing pair (0-based) in lexicographic order.
    pub failing_pair: Option<(usize, usize)>,
}

struct Frame {
    n: usize,
    adj: Vec<u32>,
    deg: Vec<u32>,
}

impl Frame {
    fn new(g: &BipartiteGraph) -> Result<Self, OracleError> {
        let n = g.balanced_n()?;
        if 2 * n > HARD_LIMIT {
            return Err(OracleError::TooLarge(2 * n));
        }
        let mut adj = Vec::with_capacity(2 * n);
        for i in 0..n {
            adj.push((g.x_row(i) as u32) << n);
        }
        for j in 0..n {
            adj.push(g.y_row(j) as u32);
        }
        let deg = adj.iter().map(|a| a.count_ones()).collect();
        Ok(Self { n, adj, deg })
    }

    fn full(&self) -> u32 {
        if 2 * self.n == 32 {
            u32::MAX
        } else {
            (1u32 << (2 * self.n)) - 1
        }
    }

    fn to_vertex(&self, v: usize) -> Vertex {
        if v < self.n {
            Vertex::X(v)
        } else {
            Vertex::Y(v - self.n)
        }
    }

    fn use_dp(&self, backend: Backend) -> bool {
        match backend {
            Backend::Auto => 2 * self.n <= DP_LIMIT,
            Backend::Dfs => false,
        }
    }
}

fn cancelled(cancel: Option<&AtomicBool>) -> bool {
    cancel.is_some_and(|c| c.load(Ordering::Relaxed))
}

/// `reach[mask]` = set of vertices `v` such that some path from `source`
/// covers exactly `mask` and ends at `v`.
fn dp_table(frame: &Frame, source: usize, cancel: Option<&AtomicBool>) -> Result<Vec<u32>, OracleError> {
    let size = 1usize << (2 * frame.n);
    let mut reach = vec![0u32; size];
    reach[1 << source] = 1 << source;
    for mask in 0..size {
        if mask & 0xffff == 0 && cancelled(cancel) {
            return Err(OracleError::Cancelled);
        }
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in bits(ends as u64) {
            for u in bits((frame.adj[v] & !(mask as u32)) as u64) {
                reach[mask | 1 << u] |= 1 << u;
            }
        }
    }
    Ok(reach)
}

fn dp_walk_back(frame: &Frame, reach: &[u32], source: usize, target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut mask = frame.full() as usize;
    let mut v = target;
    while v != source || mask != 1 << source {
        let prev_mask = mask & !(1 << v);
        let u = bits((reach[prev_mask] & frame.adj[v]) as u64)
            .next()
            .expect("dp table is consistent");
        path.push(u);
        mask = prev_mask;
        v = u;
    }
    path.reverse();
    path
}

/// Fail-first DFS for a Hamilton path `source -> target`.
fn dfs_path(
    frame: &Frame,
    source: usize,
    target: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Option<Vec<usize>>, OracleError> {
    let total = 2 * frame.n;
    if total == 0 {
        return Ok(None);
    }
    if source == target {
        return Ok((total == 1).then(|| vec![source]));
    }
    let mut path = vec![source];
    let mut steps = 0u64;
    let found = dfs_rec(frame, target, 1u32 << source, &mut path, cancel, &mut steps)?;
    Ok(found.then_some(path))
}

fn dfs_rec(
    frame: &Frame,
    target: usize,
    visited: u32,
    path: &mut Vec<usize>,
    cancel: Option<&AtomicBool>,
    steps: &mut u64,
) -> Result<bool, OracleError> {
    *steps += 1;
    if *steps & 0xfff == 0 && cancelled(cancel) {
        return Err(OracleError::Cancelled);
    }
    let v = *path.last().unwrap();
    let full = frame.full();
    let remaining = full & !visited;
    if remaining == 1 << target {
        if frame.adj[v] >> target & 1 == 1 {
            path.push(target);
            return Ok(true);
        }
        return Ok(false);
    }
    // An unvisited interior vertex needs two neighbours among the unvisited
    // vertices and the current end; the target needs one.
    let open = remaining | 1 << v;
    for u in bits(remaining as u64) {
        let need = if u == target { 1 } else { 2 };
        if (frame.adj[u] & open).count_ones() < need {
            return Ok(false);
        }
    }
    let mut next: Vec<usize> = bits((frame.adj[v] & remaining & !(1 << target)) as u64).collect();
    next.sort_by_key(|&u| ((frame.adj[u] & remaining).count_ones(), frame.deg[u], u));
    for u in next {
        path.push(u);
        if dfs_rec(frame, target, visited | 1 << u, path, cancel, steps)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// A Hamilton path from `x_x` to `y_y`, if one exists.
pub fn hamilton_path_between(
    g: &BipartiteGraph,
    x: usize,
    y: usize,
) -> Result<Option<Vec<Vertex>>, OracleError> {
    hamilton_path_with(g, x, y, Backend::Auto, None)
}

pub fn hamilton_path_with(
    g: &BipartiteGraph,
    x: usize,
    y: usize,
    backend: Backend,
    cancel: Option<&AtomicBool>,
) -> Result<Option<Vec<Vertex>>, OracleError> {
    let frame = Frame::new(g)?;
    if x >= frame.n || y >= frame.n {
        return Err(OracleError::VertexOutOfRange);
    }
    let target = frame.n + y;
    let path = if frame.use_dp(backend) {
        let reach = dp_table(&frame, x, cancel)?;
        let full = frame.full() as usize;
        (reach[full] >> target & 1 == 1).then(|| dp_walk_back(&frame, &reach, x, target))
    } else {
        dfs_path(&frame, x, target, cancel)?
    };
    Ok(path.map(|p| p.into_iter().map(|v| frame.to_vertex(v)).collect()))
}

pub fn is_weakly_hc(g: &BipartiteGraph) -> Result<OracleResult, OracleError> {
    is_weakly_hc_with(g, OracleOptions::default())
}

/// Decides weak Hamilton-connectedness over all `n^2` cross pairs in lexicographic
/// order, stopping at the first pair without a Hamilton path.
pub fn is_weakly_hc_with(
    g: &BipartiteGraph,
    opts: OracleOptions<'_>,
) -> Result<OracleResult, OracleError> {
    let frame = Frame::new(g)?;
    let n = frame.n;
    let mut witnesses = opts.witnesses.then(BTreeMap::new);
    let fail = |pair| OracleResult { weakly_hc: false, witness_paths: None, failing_pair: Some(pair) };
    let as_vertices = |p: Vec<usize>| p.into_iter().map(|v| frame.to_vertex(v)).collect::<Vec<_>>();
    for x in 0..n {
        if cancelled(opts.cancel) {
            return Err(OracleError::Cancelled);
        }
        if frame.use_dp(opts.backend) {
            let reach = dp_table(&frame, x, opts.cancel)?;
            let ends = reach[frame.full() as usize];
            for y in 0..n {
                if ends >> (n + y) & 1 == 0 {
                    return Ok(fail((x, y)));
                }
                if let Some(w) = witnesses.as_mut() {
                    w.insert((x, y), as_vertices(dp_walk_back(&frame, &reach, x, n + y)));
                }
            }
        } else {
            for y in 0..n {
                match dfs_path(&frame, x, n + y, opts.cancel)? {
                    None => return Ok(fail((x, y))),
                    Some(p) => {
                        if let Some(w) = witnesses.as_mut() {
                            w.insert((x, y), as_vertices(p));
                        }
                    }
                }
            }
        }
    }
    Ok(OracleResult { weakly_hc: true, witness_paths: witnesses, failing_pair: None })
}

/// True iff some Hamilton cycle of `g` uses the edge `x_x y_y`.
pub fn hamilton_cycle_through_edge(
    g: &BipartiteGraph,
    x: usize,
    y: usize,
) -> Result<bool, OracleError> {
    let n = g.balanced_n()?;
    if x >= n || y >= n {
        return Err(OracleError::VertexOutOfRange);
    }
    if !g.has_edge(x, y) {
        return Err(OracleError::NotAnEdge(x, y));
    }
    if n < 2 {
        return Ok(false);
    }
    // For n >= 2 a Hamilton x..y path never uses xy itself, so closing it with xy
    // gives a Hamilton cycle through xy and vice versa.
    Ok(hamilton_path_between(g, x, y)?.is_some())
}

/// Checks that `path` is a Hamilton path of `g` from `x_x` to `y_y`.
pub fn validate_path(g: &BipartiteGraph, x: usize, y: usize, path: &[Vertex]) -> bool {
    let Ok(n) = g.balanced_n() else { return false };
    if path.len() != 2 * n || path.first() != Some(&Vertex::X(x)) || path.last() != Some(&Vertex::Y(y)) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !path.iter().all(|v| seen.insert(*v)) {
        return false;
    }
    path.windows(2).all(|w| match (w[0], w[1]) {
        (Vertex::X(i), Vertex::Y(j)) | (Vertex::Y(j), Vertex::X(i)) => {
            i < n && j < n && g.has_edge(i, j)
        }
        _ => false,
    })
}
