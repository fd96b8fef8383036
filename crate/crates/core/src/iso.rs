//! Isomorphism search for bipartite graphs.
//!
//! Backtracking over X-vertex assignments. After each assignment the Y-vertices
//! of both graphs are profiled by `(degree, adjacency to the assigned X-vertices)`;
//! the two profile multisets must agree, which also fixes the Y-bijection once
//! every X-vertex is placed.

use crate::graph::{bits, BipartiteGraph};

/// Vertex bijection from one graph onto another.
///
/// Without `swapped`, `x_i -> x_{x_map[i]}` and `y_j -> y_{y_map[j]}`. With
/// `swapped`, `x_i -> y_{x_map[i]}` and `y_j -> x_{y_map[j]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub swapped: bool,
    pub x_map: Vec<usize>,
    pub y_map: Vec<usize>,
}

impl Isomorphism {
    /// Image of `g` under the mapping.
    pub fn apply(&self, g: &BipartiteGraph) -> BipartiteGraph {
        if self.swapped {
            // x_i of g lands on y_{x_map[i]}: relabel the swapped graph.
            g.swap_parts().relabel(&self.y_map, &self.x_map)
        } else {
            g.relabel(&self.x_map, &self.y_map)
        }
    }
}

/// Finds an isomorphism `g -> h`, trying the part-swapping orientation when allowed.
pub fn is_isomorphic(
    g: &BipartiteGraph,
    h: &BipartiteGraph,
    allow_part_swap: bool,
) -> Option<Isomorphism> {
    if let Some((x_map, y_map)) = part_respecting(g, h) {
        return Some(Isomorphism { swapped: false, x_map, y_map });
    }
    if allow_part_swap {
        // g' has X' = Y(g); a part-respecting map g' -> h sends y_j of g to x_{mx[j]}.
        let gs = g.swap_parts();
        if let Some((mx, my)) = part_respecting(&gs, h) {
            return Some(Isomorphism { swapped: true, x_map: my, y_map: mx });
        }
    }
    None
}

fn sorted_degrees(rows: &[u64]) -> Vec<u32> {
    let mut d: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    d.sort_unstable();
    d
}

fn part_respecting(g: &BipartiteGraph, h: &BipartiteGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    if g.part_sizes() != h.part_sizes() || g.edge_count() != h.edge_count() {
        return None;
    }
    if sorted_degrees(g.x_rows()) != sorted_degrees(h.x_rows())
        || sorted_degrees(g.y_rows()) != sorted_degrees(h.y_rows())
    {
        return None;
    }
    let a = g.x_count();
    // Most constrained first: rare degrees, then high degree.
    let mut order: Vec<usize> = (0..a).collect();
    let freq = |d: u32| g.x_rows().iter().filter(|r| r.count_ones() == d).count();
    order.sort_by_key(|&i| {
        let d = g.x_rows()[i].count_ones();
        (freq(d), std::cmp::Reverse(d), i)
    });
    let mut search = Search {
        g,
        h,
        order,
        assigned: vec![usize::MAX; a],
        used: 0,
    };
    if !search.extend(0) {
        return None;
    }
    let x_map = search.assigned;
    let y_map = match_y(g, h, &x_map)?;
    Some((x_map, y_map))
}

struct Search<'a> {
    g: &'a BipartiteGraph,
    h: &'a BipartiteGraph,
    order: Vec<usize>,
    assigned: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let gi = self.order[depth];
        let dg = self.g.x_degree(gi);
        for hi in 0..self.h.x_count() {
            if self.used >> hi & 1 == 1 || self.h.x_degree(hi) != dg {
                continue;
            }
            self.assigned[gi] = hi;
            self.used |= 1 << hi;
            if self.profiles_agree(depth + 1) && self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << hi);
            self.assigned[gi] = usize::MAX;
        }
        false
    }

    fn profiles_agree(&self, placed: usize) -> bool {
        let gx: Vec<usize> = self.order[..placed].to_vec();
        let hx: Vec<usize> = gx.iter().map(|&i| self.assigned[i]).collect();
        let profile = |graph: &BipartiteGraph, xs: &[usize]| {
            let mut p: Vec<(u32, u64)> = (0..graph.y_count())
                .map(|j| {
                    let col = graph.y_row(j);
                    let sig = xs
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (pos, &x)| acc | ((col >> x & 1) << pos));
                    (col.count_ones(), sig)
                })
                .collect();
            p.sort_unstable();
            p
        };
        profile(self.g, &gx) == profile(self.h, &hx)
    }
}

fn match_y(g: &BipartiteGraph, h: &BipartiteGraph, x_map: &[usize]) -> Option<Vec<usize>> {
    let image = |col: u64| bits(col).fold(0u64, |acc, i| acc | 1 << x_map[i]);
    let mut taken = 0u64;
    let mut y_map = Vec::with_capacity(g.y_count());
    for j in 0..g.y_count() {
        let want = image(g.y_row(j));
        let k = (0..h.y_count()).find(|&k| taken >> k & 1 == 0 && h.y_row(k) == want)?;
        taken |= 1 << k;
        y_map.push(k);
    }
    Some(y_map)
}
