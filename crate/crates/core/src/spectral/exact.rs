//! Exact comparison of a largest eigenvalue against an integer.
//!
//! `lambda_max(M) < c` iff `cI - M` is positive definite, and `<= c` iff it is
//! positive semidefinite. Both are decided by fraction-free symmetric
//! elimination over big integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::graph::BipartiteGraph;

/// Row-major `B B^T` with integer entries.
pub fn gram_matrix_int(g: &BipartiteGraph) -> Vec<i64> {
    let a = g.x_count();
    let mut m = vec![0; a * a];
    for i in 0..a {
        for k in 0..a {
            m[i * a + k] = (g.x_row(i) & g.x_row(k)).count_ones() as i64;
        }
    }
    m
}

/// Row-major `D + A` with integer entries, X-vertices first.
pub fn signless_laplacian_int(g: &BipartiteGraph) -> Vec<i64> {
    let (a, b) = g.part_sizes();
    let dim = a + b;
    let mut m = vec![0; dim * dim];
    for (i, j) in g.edges() {
        m[i * dim + a + j] = 1;
        m[(a + j) * dim + i] = 1;
    }
    for i in 0..a {
        m[i * dim + i] = g.x_degree(i) as i64;
    }
    for j in 0..b {
        m[(a + j) * dim + a + j] = g.y_degree(j) as i64;
    }
    m
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Definiteness {
    Definite,
    Semidefinite,
    Neither,
}

/// Classifies a symmetric integer matrix by Bareiss elimination with diagonal
/// pivots taken in order. A zero pivot is allowed only when its whole row has
/// vanished, in which case the index is dropped.
fn definiteness(m: Vec<BigInt>, dim: usize) -> Definiteness {
    let mut a = m;
    let mut alive = vec![true; dim];
    let mut prev = BigInt::from(1);
    let mut singular = false;
    for p in 0..dim {
        let pivot = a[p * dim + p].clone();
        if pivot.is_negative() {
            return Definiteness::Neither;
        }
        alive[p] = false;
        if pivot.is_zero() {
            if (0..dim).any(|j| alive[j] && !a[p * dim + j].is_zero()) {
                return Definiteness::Neither;
            }
            singular = true;
            continue;
        }
        for j in (0..dim).filter(|&j| alive[j]) {
            for k in (j..dim).filter(|&k| alive[k]) {
                let v = (&pivot * &a[j * dim + k] - &a[j * dim + p] * &a[p * dim + k]) / &prev;
                a[k * dim + j] = v.clone();
                a[j * dim + k] = v;
            }
        }
        prev = pivot;
    }
    if singular {
        Definiteness::Semidefinite
    } else {
        Definiteness::Definite
    }
}

/// Orders `lambda_max(M)` against `c` for a symmetric integer matrix `M`.
pub fn compare_largest_eigenvalue(m: &[i64], dim: usize, c: i64) -> Ordering {
    assert_eq!(m.len(), dim * dim);
    let shifted: Vec<BigInt> = (0..dim * dim)
        .map(|idx| {
            let diag = if idx / dim == idx % dim { c } else { 0 };
            BigInt::from(diag) - m[idx]
        })
        .collect();
    match definiteness(shifted, dim) {
        Definiteness::Definite => Ordering::Less,
        Definiteness::Semidefinite => Ordering::Equal,
        Definiteness::Neither => Ordering::Greater,
    }
}

/// Orders `rho(G)^2` against `c`.
pub fn compare_rho_squared(g: &BipartiteGraph, c: i64) -> Ordering {
    compare_largest_eigenvalue(&gram_matrix_int(g), g.x_count(), c)
}

/// Orders `q(G)` against `c`.
pub fn compare_q(g: &BipartiteGraph, c: i64) -> Ordering {
    compare_largest_eigenvalue(&signless_laplacian_int(g), g.x_count() + g.y_count(), c)
}
