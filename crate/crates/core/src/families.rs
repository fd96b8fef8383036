//! Extremal families `K_{m,n}`, `Q_n^t`, `R_n^t` and `S_n^t` with fixed labelings.
//!
//! * `Q_n^t`: `K_{n,n}` minus every edge between `{x_0..x_{t-2}}` and `{y_0..y_{n-t-1}}`.
//! * `R_n^t`: complete blocks on `{x_0..x_{t-1}} x {y_0..y_{t-1}}` and
//!   `{x_{t-1}..x_{n-1}} x {y_{t-1}..y_{n-1}}`, sharing the cut pair `x_{t-1}, y_{t-1}`.
//! * `S_n^t`: `R_n^t` without the cut edge `x_{t-1} y_{t-1}`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{low_mask, BipartiteGraph, GraphError, MAX_PART};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} needs {constraint}, got n = {n}, t = {t}")]
    ParameterOutOfRange { family: &'static str, n: usize, t: usize, constraint: &'static str },
    #[error("complete bipartite graph needs both parts nonempty, got {m} and {n}")]
    EmptyPart { m: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilySpec {
    Complete { m: usize, n: usize },
    Q { n: usize, t: usize },
    R { n: usize, t: usize },
    S { n: usize, t: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<BipartiteGraph, FamilyError> {
        match *self {
            FamilySpec::Complete { m, n } => make_complete(m, n),
            FamilySpec::Q { n, t } => make_q(n, t),
            FamilySpec::R { n, t } => make_r(n, t),
            FamilySpec::S { n, t } => make_s(n, t),
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Complete { m, n } => check_complete(m, n),
            FamilySpec::Q { n, t } => check_q(n, t),
            FamilySpec::R { n, t } => check_rs("R_n^t", n, t),
            FamilySpec::S { n, t } => check_rs("S_n^t", n, t),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { m, n } => write!(f, "K_{{{m},{n}}}"),
            FamilySpec::Q { n, t } => write!(f, "Q_{n}^{t}"),
            FamilySpec::R { n, t } => write!(f, "R_{n}^{t}"),
            FamilySpec::S { n, t } => write!(f, "S_{n}^{t}"),
        }
    }
}

/// Largest admissible `t` for `Q_n^t`, i.e. `floor((n+1)/2)`.
pub fn q_t_max(n: usize) -> usize {
    n.div_ceil(2)
}

fn check_complete(m: usize, n: usize) -> Result<(), FamilyError> {
    if m == 0 || n == 0 {
        return Err(FamilyError::EmptyPart { m, n });
    }
    for size in [m, n] {
        if size > MAX_PART {
            return Err(GraphError::PartTooLarge(size).into());
        }
    }
    Ok(())
}

fn check_q(n: usize, t: usize) -> Result<(), FamilyError> {
    if t < 2 || t > q_t_max(n) {
        return Err(FamilyError::ParameterOutOfRange {
            family: "Q_n^t",
            n,
            t,
            constraint: "2 <= t <= (n+1)/2",
        });
    }
    check_complete(n, n)
}

fn check_rs(family: &'static str, n: usize, t: usize) -> Result<(), FamilyError> {
    if t < 2 || t + 1 > n {
        return Err(FamilyError::ParameterOutOfRange {
            family,
            n,
            t,
            constraint: "2 <= t <= n-1",
        });
    }
    check_complete(n, n)
}

pub fn make_complete(m: usize, n: usize) -> Result<BipartiteGraph, FamilyError> {
    check_complete(m, n)?;
    Ok(BipartiteGraph::from_rows(m, n, &vec![low_mask(n); m])?)
}

pub fn make_q(n: usize, t: usize) -> Result<BipartiteGraph, FamilyError> {
    check_q(n, t)?;
    let full = low_mask(n);
    let deleted = low_mask(n - t);
    let rows: Vec<u64> = (0..n)
        .map(|i| if i + 1 < t { full & !deleted } else { full })
        .collect();
    Ok(BipartiteGraph::from_rows(n, n, &rows)?)
}

pub fn make_r(n: usize, t: usize) -> Result<BipartiteGraph, FamilyError> {
    check_rs("R_n^t", n, t)?;
    let first = low_mask(t);
    let second = low_mask(n) & !low_mask(t - 1);
    let rows: Vec<u64> = (0..n)
        .map(|i| match i.cmp(&(t - 1)) {
            std::cmp::Ordering::Less => first,
            std::cmp::Ordering::Equal => first | second,
            std::cmp::Ordering::Greater => second,
        })
        .collect();
    Ok(BipartiteGraph::from_rows(n, n, &rows)?)
}

pub fn make_s(n: usize, t: usize) -> Result<BipartiteGraph, FamilyError> {
    check_rs("S_n^t", n, t)?;
    Ok(make_r(n, t)?.without_edge(t - 1, t - 1))
}
