//! Sufficient conditions for weak Hamilton-connectedness, one checker each.
//!
//! Every checker scans all admissible values of its integer parameter and
//! reports the best outcome with the witnessing value in `detail`. Spectral
//! comparisons go through a decision band: a value within the band of its
//! threshold is inconclusive unless the equality case can be settled exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::closure::b_closure;
use crate::families::{make_q, make_r, make_s, q_t_max};
use crate::graph::{bits, BipartiteGraph, DegreeSequence, GraphError};
use crate::iso::is_isomorphic;
use crate::oracle::{is_weakly_hc, OracleError};
use crate::spectral::exact::{compare_q, compare_rho_squared};
use crate::spectral::{
    adjacency_spectral_radius, signless_laplacian_spectral_radius, SpectralError, DEFAULT_TOL,
};

/// Relative width of the spectral decision band.
pub const DEFAULT_BAND: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionId {
    PairSum,
    Gamma,
    DegreeCount,
    ClosureComplete,
    DegreeSequence,
    EdgeCountT,
    EdgeCountK,
    SpectralRho,
    SpectralQ,
    SpectralRhoComplement,
    SpectralQComplement,
    SpectralClosedRho,
    SpectralClosedQ,
}

impl ConditionId {
    pub const ALL: [ConditionId; 13] = [
        ConditionId::PairSum,
        ConditionId::Gamma,
        ConditionId::DegreeCount,
        ConditionId::ClosureComplete,
        ConditionId::DegreeSequence,
        ConditionId::EdgeCountT,
        ConditionId::EdgeCountK,
        ConditionId::SpectralRho,
        ConditionId::SpectralQ,
        ConditionId::SpectralRhoComplement,
        ConditionId::SpectralQComplement,
        ConditionId::SpectralClosedRho,
        ConditionId::SpectralClosedQ,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionId::PairSum => "pair_sum",
            ConditionId::Gamma => "gamma",
            ConditionId::DegreeCount => "degree_count",
            ConditionId::ClosureComplete => "closure_complete",
            ConditionId::DegreeSequence => "degree_sequence",
            ConditionId::EdgeCountT => "edge_count_t",
            ConditionId::EdgeCountK => "edge_count_k",
            ConditionId::SpectralRho => "spectral_rho",
            ConditionId::SpectralQ => "spectral_q",
            ConditionId::SpectralRhoComplement => "spectral_rho_complement",
            ConditionId::SpectralQComplement => "spectral_q_complement",
            ConditionId::SpectralClosedRho => "spectral_closed_rho",
            ConditionId::SpectralClosedQ => "spectral_closed_q",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A set of checkers selected by name (`--condition`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckerGroup {
    PairSum,
    Gamma,
    DegreeCount,
    ClosureComplete,
    DegreeSequence,
    EdgeCountT,
    EdgeCountK,
    /// The four spectral conditions with `Q_n^k` thresholds.
    Spectral,
    /// The two closed-form spectral conditions.
    SpectralClosed,
    /// No certificates; only the characterization of non-weakly-Hamilton-connected
    /// graphs with `sigma = n+1` (meaningful in sweeps).
    Sandwich,
    All,
}

impl CheckerGroup {
    pub const NAMES: [&'static str; 11] = [
        "pair_sum",
        "gamma",
        "degree_count",
        "closure_complete",
        "degree_sequence",
        "edge_count_t",
        "edge_count_k",
        "spectral",
        "spectral_closed",
        "sandwich",
        "all",
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckerGroup::PairSum => "pair_sum",
            CheckerGroup::Gamma => "gamma",
            CheckerGroup::DegreeCount => "degree_count",
            CheckerGroup::ClosureComplete => "closure_complete",
            CheckerGroup::DegreeSequence => "degree_sequence",
            CheckerGroup::EdgeCountT => "edge_count_t",
            CheckerGroup::EdgeCountK => "edge_count_k",
            CheckerGroup::Spectral => "spectral",
            CheckerGroup::SpectralClosed => "spectral_closed",
            CheckerGroup::Sandwich => "sandwich",
            CheckerGroup::All => "all",
        }
    }

    /// Whether the sandwich characterization is checked when sweeping this group.
    pub fn checks_sandwich(&self) -> bool {
        matches!(self, CheckerGroup::Sandwich | CheckerGroup::All)
    }
}

impl fmt::Display for CheckerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown condition {0:?}; expected one of {names}", names = CheckerGroup::NAMES.join(", "))]
pub struct UnknownCondition(pub String);

impl FromStr for CheckerGroup {
    type Err = UnknownCondition;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "pair_sum" => CheckerGroup::PairSum,
            "gamma" => CheckerGroup::Gamma,
            "degree_count" => CheckerGroup::DegreeCount,
            "closure_complete" => CheckerGroup::ClosureComplete,
            "degree_sequence" => CheckerGroup::DegreeSequence,
            "edge_count_t" => CheckerGroup::EdgeCountT,
            "edge_count_k" => CheckerGroup::EdgeCountK,
            "spectral" => CheckerGroup::Spectral,
            "spectral_closed" => CheckerGroup::SpectralClosed,
            "sandwich" => CheckerGroup::Sandwich,
            "all" => CheckerGroup::All,
            other => return Err(UnknownCondition(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Exact,
    NumericWithBand,
    Inconclusive,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::Exact => "exact",
            Confidence::NumericWithBand => "numeric_with_band",
            Confidence::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub id: ConditionId,
    pub applicable: bool,
    pub satisfied: bool,
    pub certified: bool,
    pub confidence: Confidence,
    pub detail: String,
}

impl Verdict {
    fn exact(id: ConditionId, satisfied: bool, detail: String) -> Self {
        Self { id, applicable: true, satisfied, certified: satisfied, confidence: Confidence::Exact, detail }
    }

    fn not_applicable(id: ConditionId, detail: String) -> Self {
        Self {
            id,
            applicable: false,
            satisfied: false,
            certified: false,
            confidence: Confidence::Exact,
            detail,
        }
    }
}

/// Numerical settings for the spectral checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralConfig {
    /// Absolute tolerance handed to the eigenvalue solver.
    pub tol: f64,
    /// Relative decision band: `band * max(1, |threshold|)`.
    pub band: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, band: DEFAULT_BAND }
    }
}

impl SpectralConfig {
    fn width(&self, threshold: f64) -> f64 {
        self.band * threshold.abs().max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Above,
    Within,
    Below,
}

fn compare(value: f64, threshold: f64, cfg: &SpectralConfig) -> Side {
    let w = cfg.width(threshold);
    if value >= threshold + w {
        Side::Above
    } else if value <= threshold - w {
        Side::Below
    } else {
        Side::Within
    }
}

fn balanced(g: &BipartiteGraph) -> Result<usize, GraphError> {
    g.balanced_n()
}

/// Every nonadjacent cross pair has degree sum at least `n + 2`.
pub fn check_pair_sum(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let id = ConditionId::PairSum;
    Ok(match g.sigma()? {
        None => Verdict::exact(id, true, "complete bipartite: no nonadjacent pair".into()),
        Some(s) if s >= n + 2 => Verdict::exact(id, true, format!("sigma = {s} >= n+2 = {}", n + 2)),
        Some(s) => Verdict::exact(id, false, format!("sigma = {s} < n+2 = {}", n + 2)),
    })
}

/// Low-degree set `{v on side : d(v) <= k}` as a bitset.
fn low_set(degrees: &[usize], k: usize) -> u64 {
    degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d <= k)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// For every `2 <= k <= (n+1)/2`, every `(k-1)`-subset `Gamma` of
/// `{x : d(x) <= k}` and every `y` with `d(y) <= n-k+1`, `y` has a neighbour in
/// `Gamma`; and the same with the parts exchanged.
///
/// A violating `Gamma` exists for `y` exactly when at least `k-1` low-degree
/// vertices miss `y`, so no subset enumeration is needed.
pub fn check_gamma(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let id = ConditionId::Gamma;
    let k_max = q_t_max(n);
    if k_max < 2 {
        return Ok(Verdict::not_applicable(id, format!("no integer k in [2, (n+1)/2] for n = {n}")));
    }
    let ds = g.degree_sequence();
    type Side<'a> = (&'a [usize], &'a [usize], &'a [u64], char, char);
    let sides: [Side; 2] = [
        (&ds.x, &ds.y, g.y_rows(), 'x', 'y'),
        (&ds.y, &ds.x, g.x_rows(), 'y', 'x'),
    ];
    for k in 2..=k_max {
        for (low_deg, other_deg, other_rows, low_name, other_name) in sides {
            let low = low_set(low_deg, k);
            if (low.count_ones() as usize) < k - 1 {
                continue;
            }
            for (w, &dw) in other_deg.iter().enumerate() {
                if dw > n - k + 1 {
                    continue;
                }
                let missing = low & !other_rows[w];
                if missing.count_ones() as usize >= k - 1 {
                    let gamma: Vec<String> = bits(missing)
                        .take(k - 1)
                        .map(|i| format!("{low_name}{}", i + 1))
                        .collect();
                    return Ok(Verdict::exact(
                        id,
                        false,
                        format!(
                            "k = {k}: {other_name}{} (degree {dw} <= {}) has no neighbour in Gamma = {{{}}}",
                            w + 1,
                            n - k + 1,
                            gamma.join(", ")
                        ),
                    ));
                }
            }
        }
    }
    Ok(Verdict::exact(id, true, format!("holds for every k in [2, {k_max}] on both sides")))
}

/// Fewer than `k-1` vertices of degree at most `k` in each part, for every
/// `2 <= k <= (n+1)/2`. (At `k = 1` the requirement cannot be met, so the scan
/// starts at 2.)
pub fn check_degree_count(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let id = ConditionId::DegreeCount;
    let k_max = q_t_max(n);
    if k_max < 2 {
        return Ok(Verdict::not_applicable(id, format!("no integer k in [2, (n+1)/2] for n = {n}")));
    }
    let ds = g.degree_sequence();
    for k in 2..=k_max {
        let cx = ds.x.iter().filter(|&&d| d <= k).count();
        let cy = ds.y.iter().filter(|&&d| d <= k).count();
        if cx >= k - 1 || cy >= k - 1 {
            return Ok(Verdict::exact(
                id,
                false,
                format!("k = {k}: {cx} x-vertices and {cy} y-vertices have degree <= {k}, need < {}", k - 1),
            ));
        }
    }
    Ok(Verdict::exact(id, true, format!("counts below k-1 for every k in [2, {k_max}] (k = 1 excluded)")))
}

/// The closure is complete bipartite.
pub fn check_closure_complete(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let trace = b_closure(g)?;
    let e = trace.result.edge_count();
    let complete = trace.result.is_complete_bipartite();
    let detail = format!(
        "closure adds {} edge(s); closed graph has {e} of {} edges",
        trace.added_edges.len(),
        n * n
    );
    Ok(Verdict::exact(ConditionId::ClosureComplete, complete, detail))
}

/// No `2 <= k <= (n+1)/2` with `d_{k-1} <= k` and `d_{n-1} <= n-k+1`
/// (ascending degrees, 1-based).
pub fn check_degree_sequence(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let id = ConditionId::DegreeSequence;
    if n < 3 {
        return Ok(Verdict::not_applicable(id, format!("needs n >= 3, got n = {n}")));
    }
    let ds = g.degree_sequence();
    for k in 2..=q_t_max(n) {
        let (lo, hi) = (ds.d(k - 1), ds.d(n - 1));
        if lo <= k && hi <= n - k + 1 {
            return Ok(Verdict::exact(
                id,
                false,
                format!("k = {k}: d_{} = {lo} <= {k} and d_{} = {hi} <= {}", k - 1, n - 1, n - k + 1),
            ));
        }
    }
    Ok(Verdict::exact(id, true, format!("no k in [2, {}] qualifies", q_t_max(n))))
}

/// `e(G) > max{ n(n-t+1) + t(t+1) : k <= t <= (n+1)/2 }` with `k = min(delta, (n+1)/2) >= 2`.
pub fn check_edge_count_t(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let id = ConditionId::EdgeCountT;
    let t_max = q_t_max(n);
    let k = g.min_degree().min(t_max);
    if k < 2 {
        return Ok(Verdict::not_applicable(
            id,
            format!("needs min(delta, (n+1)/2) >= 2, got {k}"),
        ));
    }
    let (t_star, threshold) = (k..=t_max)
        .map(|t| (t, n * (n - t + 1) + t * (t + 1)))
        .max_by_key(|&(t, v)| (v, std::cmp::Reverse(t)))
        .expect("k <= t_max");
    let e = g.edge_count();
    let rel = if e > threshold { ">" } else { "<=" };
    Ok(Verdict::exact(
        id,
        e > threshold,
        format!("k = {k}: e = {e} {rel} {threshold} (maximised at t = {t_star})"),
    ))
}

/// Some `1 <= k <= min(delta, n/2)` with `e(G) > n(n-k) + k(k+1)`.
pub fn check_edge_count_k(g: &BipartiteGraph) -> Result<Verdict, GraphError> {
    let n = balanced(g)?;
    let id = ConditionId::EdgeCountK;
    let k_max = g.min_degree().min(n / 2);
    if k_max < 1 {
        return Ok(Verdict::not_applicable(id, "needs delta >= 1 and n >= 2".into()));
    }
    let e = g.edge_count();
    for k in 1..=k_max {
        let threshold = n * (n - k) + k * (k + 1);
        if e > threshold {
            return Ok(Verdict::exact(id, true, format!("k = {k}: e = {e} > {threshold}")));
        }
    }
    let best = n * (n - k_max) + k_max * (k_max + 1);
    Ok(Verdict::exact(
        id,
        false,
        format!("e = {e} does not exceed n(n-k)+k(k+1) for any k in [1, {k_max}] (smallest threshold {best})"),
    ))
}

/// Smallest `t` in `[2, n-1]` with `G` isomorphic to `S_n^t` or `R_n^t`.
pub fn matches_sandwich(g: &BipartiteGraph) -> Result<Option<usize>, GraphError> {
    let n = balanced(g)?;
    let e = g.edge_count();
    for t in 2..n {
        let r_edges = t * t + (n - t + 1) * (n - t + 1) - 1;
        let candidate = if e == r_edges {
            make_r(n, t)
        } else if e + 1 == r_edges {
            make_s(n, t)
        } else {
            continue;
        };
        let h = candidate.expect("2 <= t <= n-1");
        if is_isomorphic(g, &h, true).is_some() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Lazily computed eigenvalues; a failure is remembered as its message.
struct Lazy<'a> {
    g: &'a BipartiteGraph,
    cfg: SpectralConfig,
    rho: Option<Result<f64, String>>,
    q: Option<Result<f64, String>>,
    rho_c: Option<Result<f64, String>>,
    q_c: Option<Result<f64, String>>,
}

fn solve(r: Result<crate::spectral::EigenEstimate<f64>, SpectralError>) -> Result<f64, String> {
    r.map(|e| e.value).map_err(|e| e.to_string())
}

impl<'a> Lazy<'a> {
    fn new(g: &'a BipartiteGraph, cfg: SpectralConfig) -> Self {
        Self { g, cfg, rho: None, q: None, rho_c: None, q_c: None }
    }

    fn rho(&mut self) -> Result<f64, String> {
        let (g, tol) = (self.g, self.cfg.tol);
        self.rho.get_or_insert_with(|| solve(adjacency_spectral_radius(g, tol))).clone()
    }

    fn q(&mut self) -> Result<f64, String> {
        let (g, tol) = (self.g, self.cfg.tol);
        self.q.get_or_insert_with(|| solve(signless_laplacian_spectral_radius(g, tol))).clone()
    }

    fn rho_complement(&mut self) -> Result<f64, String> {
        let (g, tol) = (self.g, self.cfg.tol);
        self.rho_c
            .get_or_insert_with(|| solve(adjacency_spectral_radius(&g.quasi_complement(), tol)))
            .clone()
    }

    fn q_complement(&mut self) -> Result<f64, String> {
        let (g, tol) = (self.g, self.cfg.tol);
        self.q_c
            .get_or_insert_with(|| solve(signless_laplacian_spectral_radius(&g.quasi_complement(), tol)))
            .clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Outcome {
    Certified { confidence: Confidence, detail: String },
    Inconclusive(String),
    Fails(String),
}

/// Folds per-k outcomes: the first certificate wins, otherwise any inconclusive
/// step makes the whole verdict inconclusive.
fn fold_outcomes(id: ConditionId, outcomes: Vec<Outcome>, none_detail: String) -> Verdict {
    if outcomes.is_empty() {
        return Verdict::not_applicable(id, none_detail);
    }
    if let Some(Outcome::Certified { confidence, detail }) =
        outcomes.iter().find(|o| matches!(o, Outcome::Certified { .. }))
    {
        return Verdict {
            id,
            applicable: true,
            satisfied: true,
            certified: true,
            confidence: *confidence,
            detail: detail.clone(),
        };
    }
    if let Some(Outcome::Inconclusive(detail)) =
        outcomes.iter().find(|o| matches!(o, Outcome::Inconclusive(_)))
    {
        return Verdict {
            id,
            applicable: true,
            satisfied: false,
            certified: false,
            confidence: Confidence::Inconclusive,
            detail: detail.clone(),
        };
    }
    let details: Vec<String> = outcomes
        .into_iter()
        .map(|o| match o {
            Outcome::Fails(d) => d,
            _ => unreachable!(),
        })
        .collect();
    Verdict {
        id,
        applicable: true,
        satisfied: false,
        certified: false,
        confidence: Confidence::NumericWithBand,
        detail: details.join("; "),
    }
}

fn fmt_num(x: f64) -> String {
    format!("{x:.10}")
}

/// Spectral conditions with `Q_n^k` thresholds, in the order
/// `rho(G) >= rho(Q_n^k)`, `q(G) >= q(Q_n^k)` (both for `n >= k(k+1)`),
/// `rho(G^) <= sqrt((k-1)(n-k))`, `q(G^) <= n-1` (both for `n >= 2k-1`, and
/// never for graphs isomorphic to `S_n^t` or `R_n^t`), scanning `2 <= k <= delta`.
pub fn check_spectral(g: &BipartiteGraph, cfg: &SpectralConfig) -> Result<[Verdict; 4], GraphError> {
    let n = balanced(g)?;
    let ids = [
        ConditionId::SpectralRho,
        ConditionId::SpectralQ,
        ConditionId::SpectralRhoComplement,
        ConditionId::SpectralQComplement,
    ];
    let delta = g.min_degree();
    if delta < 2 {
        return Ok(ids.map(|id| Verdict::not_applicable(id, format!("needs delta >= 2, got {delta}"))));
    }
    let mut lazy = Lazy::new(g, *cfg);
    let is_q = |k: usize| {
        let q = make_q(n, k).expect("k in range");
        is_isomorphic(g, &q, true).is_some()
    };

    // (1) and (2): G against the numerically computed spectrum of Q_n^k.
    let ks_dense: Vec<usize> = (2..=delta).filter(|&k| n >= k * (k + 1)).collect();
    let mut rho_out = Vec::new();
    let mut q_out = Vec::new();
    for &k in &ks_dense {
        let qk = make_q(n, k).expect("n >= k(k+1) implies k <= (n+1)/2");
        for (which, out) in [(0, &mut rho_out), (1, &mut q_out)] {
            let (name, value, thr) = if which == 0 {
                ("rho", lazy.rho(), solve(adjacency_spectral_radius(&qk, cfg.tol)))
            } else {
                ("q", lazy.q(), solve(signless_laplacian_spectral_radius(&qk, cfg.tol)))
            };
            let (value, thr) = match (value, thr) {
                (Ok(v), Ok(t)) => (v, t),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(Outcome::Inconclusive(format!("k = {k}: eigenvalue solver failed: {e}")));
                    continue;
                }
            };
            let text = format!("k = {k}: {name}(G) = {} vs {name}(Q_{n}^{k}) = {}", fmt_num(value), fmt_num(thr));
            out.push(match compare(value, thr, cfg) {
                Side::Above => Outcome::Certified { confidence: Confidence::NumericWithBand, detail: text },
                Side::Below => Outcome::Fails(text),
                Side::Within if is_q(k) => Outcome::Certified {
                    confidence: Confidence::Exact,
                    detail: format!("{text}; G is isomorphic to Q_{n}^{k}, equality is exact"),
                },
                Side::Within => Outcome::Inconclusive(format!("{text}; within decision band")),
            });
        }
    }
    let none_dense = format!("no k in [2, {delta}] with n >= k(k+1)");

    // (3) and (4): quasi-complement against closed-form thresholds.
    let ks_sparse: Vec<usize> = (2..=delta).filter(|&k| n + 1 >= 2 * k).collect();
    let sandwich = if ks_sparse.is_empty() { None } else { matches_sandwich(g)? };
    let mut rho_c_out = Vec::new();
    let mut q_c_out = Vec::new();
    for &k in &ks_sparse {
        for (which, out) in [(0, &mut rho_c_out), (1, &mut q_c_out)] {
            let (name, value, thr, square) = if which == 0 {
                let m = ((k - 1) * (n - k)) as i64;
                ("rho", lazy.rho_complement(), (m as f64).sqrt(), Some(m))
            } else {
                ("q", lazy.q_complement(), (n - 1) as f64, None)
            };
            let value = match value {
                Ok(v) => v,
                Err(e) => {
                    out.push(Outcome::Inconclusive(format!("k = {k}: eigenvalue solver failed: {e}")));
                    continue;
                }
            };
            let mut text = format!("k = {k}: {name}(G^) = {} vs {}", fmt_num(value), fmt_num(thr));
            let spectral = match compare(value, thr, cfg) {
                Side::Below => Some(Confidence::NumericWithBand),
                Side::Above => None,
                Side::Within => {
                    let h = g.quasi_complement();
                    let exact = match square {
                        Some(m) => compare_rho_squared(&h, m),
                        None => compare_q(&h, (n - 1) as i64),
                    };
                    text.push_str(match exact {
                        Ordering::Less => "; below, decided exactly",
                        Ordering::Equal => "; equal, decided exactly",
                        Ordering::Greater => "; above, decided exactly",
                    });
                    (exact != Ordering::Greater).then_some(Confidence::Exact)
                }
            };
            out.push(match (spectral, sandwich) {
                (None, _) => Outcome::Fails(text),
                (Some(_), Some(t)) => Outcome::Fails(format!(
                    "{text}; excluded: G is isomorphic to S_{n}^{t} or R_{n}^{t}"
                )),
                (Some(confidence), None) => Outcome::Certified { confidence, detail: text },
            });
        }
    }
    let none_sparse = format!("no k in [2, {delta}] with n >= 2k-1");

    Ok([
        fold_outcomes(ids[0], rho_out, none_dense.clone()),
        fold_outcomes(ids[1], q_out, none_dense),
        fold_outcomes(ids[2], rho_c_out, none_sparse.clone()),
        fold_outcomes(ids[3], q_c_out, none_sparse),
    ])
}

/// `rho(G) >= sqrt(n(n-k+1))` and `q(G) >= 2n-k+1`, for `2 <= k <= delta`
/// with `n > k(k+1)`.
pub fn check_spectral_closed(
    g: &BipartiteGraph,
    cfg: &SpectralConfig,
) -> Result<[Verdict; 2], GraphError> {
    let n = balanced(g)?;
    let ids = [ConditionId::SpectralClosedRho, ConditionId::SpectralClosedQ];
    let delta = g.min_degree();
    if delta < 2 {
        return Ok(ids.map(|id| Verdict::not_applicable(id, format!("needs delta >= 2, got {delta}"))));
    }
    let mut lazy = Lazy::new(g, *cfg);
    let ks: Vec<usize> = (2..=delta).filter(|&k| n > k * (k + 1)).collect();
    let mut outs = [Vec::new(), Vec::new()];
    for &k in &ks {
        let (m_rho, m_q) = ((n * (n - k + 1)) as i64, (2 * n - k + 1) as i64);
        let targets = [
            ("rho", lazy.rho(), (m_rho as f64).sqrt(), compare_rho_squared as fn(&BipartiteGraph, i64) -> _, m_rho),
            ("q", lazy.q(), m_q as f64, compare_q, m_q),
        ];
        for ((name, value, thr, exact, m), out) in targets.into_iter().zip(outs.iter_mut()) {
            let value = match value {
                Ok(v) => v,
                Err(e) => {
                    out.push(Outcome::Inconclusive(format!("k = {k}: eigenvalue solver failed: {e}")));
                    continue;
                }
            };
            let text = format!("k = {k}: {name}(G) = {} vs {}", fmt_num(value), fmt_num(thr));
            out.push(match compare(value, thr, cfg) {
                Side::Above => Outcome::Certified { confidence: Confidence::NumericWithBand, detail: text },
                Side::Below => Outcome::Fails(text),
                Side::Within => match exact(g, m) {
                    Ordering::Less => Outcome::Fails(format!("{text}; below, decided exactly")),
                    _ => Outcome::Certified {
                        confidence: Confidence::Exact,
                        detail: format!("{text}; at or above, decided exactly"),
                    },
                },
            });
        }
    }
    let none = format!("no k in [2, {delta}] with n > k(k+1)");
    let [rho_out, q_out] = outs;
    Ok([
        fold_outcomes(ids[0], rho_out, none.clone()),
        fold_outcomes(ids[1], q_out, none),
    ])
}

/// Runs the checkers of `group`, in [`ConditionId::ALL`] order.
pub fn run_checkers(
    g: &BipartiteGraph,
    group: CheckerGroup,
    cfg: &SpectralConfig,
) -> Result<Vec<Verdict>, GraphError> {
    use CheckerGroup as C;
    let wants = |c: CheckerGroup| group == c || group == C::All;
    let mut out = Vec::new();
    if wants(C::PairSum) {
        out.push(check_pair_sum(g)?);
    }
    if wants(C::Gamma) {
        out.push(check_gamma(g)?);
    }
    if wants(C::DegreeCount) {
        out.push(check_degree_count(g)?);
    }
    if wants(C::ClosureComplete) {
        out.push(check_closure_complete(g)?);
    }
    if wants(C::DegreeSequence) {
        out.push(check_degree_sequence(g)?);
    }
    if wants(C::EdgeCountT) {
        out.push(check_edge_count_t(g)?);
    }
    if wants(C::EdgeCountK) {
        out.push(check_edge_count_k(g)?);
    }
    if wants(C::Spectral) {
        out.extend(check_spectral(g, cfg)?);
    }
    if wants(C::SpectralClosed) {
        out.extend(check_spectral_closed(g, cfg)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub e: usize,
    pub delta: usize,
    pub sigma: Option<usize>,
    pub degree_sequence: DegreeSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub weakly_hc: bool,
    /// 0-based `(x, y)`.
    pub failing_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub graph: GraphSummary,
    pub verdicts: Vec<Verdict>,
    /// Smallest `t` with `G` isomorphic to `S_n^t` or `R_n^t`.
    pub sandwich: Option<usize>,
    pub oracle: Option<OracleVerdict>,
}

impl ConditionReport {
    pub fn certified(&self) -> impl Iterator<Item = ConditionId> + '_ {
        self.verdicts.iter().filter(|v| v.certified).map(|v| v.id)
    }

    /// Certifying checkers contradicted by the oracle.
    pub fn violations(&self) -> Vec<ConditionId> {
        match &self.oracle {
            Some(o) if !o.weakly_hc => self.certified().collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CheckError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("soundness violation: {} certified a graph that is not weakly Hamilton-connected", join_ids(.ids))]
    SoundnessViolation { ids: Vec<ConditionId>, report: Box<ConditionReport> },
}

fn join_ids(ids: &[ConditionId]) -> String {
    ids.iter().map(|i| i.as_str()).collect::<Vec<_>>().join(", ")
}

pub fn graph_summary(g: &BipartiteGraph) -> Result<GraphSummary, GraphError> {
    let n = balanced(g)?;
    Ok(GraphSummary {
        n,
        e: g.edge_count(),
        delta: g.min_degree(),
        sigma: g.sigma()?,
        degree_sequence: g.degree_sequence(),
    })
}

/// Every checker, the graph summary, the sandwich match and optionally the
/// oracle. A certificate the oracle contradicts is returned as
/// [`CheckError::SoundnessViolation`] carrying the full report.
pub fn full_report(
    g: &BipartiteGraph,
    run_oracle: bool,
    cfg: &SpectralConfig,
) -> Result<ConditionReport, CheckError> {
    condition_report(g, CheckerGroup::All, run_oracle, cfg)
}

/// [`full_report`] restricted to one checker group.
pub fn condition_report(
    g: &BipartiteGraph,
    group: CheckerGroup,
    run_oracle: bool,
    cfg: &SpectralConfig,
) -> Result<ConditionReport, CheckError> {
    let graph = graph_summary(g)?;
    let verdicts = run_checkers(g, group, cfg)?;
    let sandwich = matches_sandwich(g)?;
    let oracle = if run_oracle {
        let r = is_weakly_hc(g)?;
        Some(OracleVerdict { weakly_hc: r.weakly_hc, failing_pair: r.failing_pair })
    } else {
        None
    };
    let report = ConditionReport { graph, verdicts, sandwich, oracle };
    let ids = report.violations();
    if ids.is_empty() {
        Ok(report)
    } else {
        Err(CheckError::SoundnessViolation { ids, report: Box::new(report) })
    }
}

/// Whether `K_{n,n-k+1}` (full side spanning a part) is forced by the edge
/// count for this `k`: `delta >= k`, `n >= 2k` and `e > n(n-k) + k(k+1)`.
pub fn containment_premise(g: &BipartiteGraph, k: usize) -> Result<bool, GraphError> {
    let n = balanced(g)?;
    Ok(k >= 1 && g.min_degree() >= k && n >= 2 * k && g.edge_count() > n * (n - k) + k * (k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_complete, make_q, make_r, make_s};

    fn c6() -> BipartiteGraph {
        BipartiteGraph::from_edge_list(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])
            .unwrap()
    }

    fn k44_minus_matching() -> BipartiteGraph {
        BipartiteGraph::from_rows(4, 4, &[0b1110, 0b1101, 0b1011, 0b0111]).unwrap()
    }

    /// Subset-enumerating reading of the Gamma condition, kept independent of
    /// the counting shortcut in `check_gamma`.
    fn gamma_by_subsets(g: &BipartiteGraph) -> bool {
        let n = g.balanced_n().unwrap();
        let ds = g.degree_sequence();
        for k in 2..=q_t_max(n) {
            for (low_deg, other_deg, other_rows) in
                [(&ds.x, &ds.y, g.y_rows()), (&ds.y, &ds.x, g.x_rows())]
            {
                let low: Vec<usize> = (0..n).filter(|&i| low_deg[i] <= k).collect();
                for subset in 0u64..(1 << low.len()) {
                    if subset.count_ones() as usize != k - 1 {
                        continue;
                    }
                    let gamma = bits(subset).fold(0u64, |acc, p| acc | 1 << low[p]);
                    for w in 0..n {
                        if other_deg[w] <= n - k + 1 && other_rows[w] & gamma == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn pair_sum_examples() {
        assert!(check_pair_sum(&k44_minus_matching()).unwrap().certified);
        assert!(!check_pair_sum(&c6()).unwrap().satisfied);
        assert!(check_pair_sum(&make_complete(3, 3).unwrap()).unwrap().certified);
        assert!(check_pair_sum(&make_complete(3, 2).unwrap()).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert!(check_gamma(&make_complete(4, 4).unwrap()).unwrap().certified);
        let v = check_gamma(&c6()).unwrap();
        assert!(!v.satisfied);
        assert!(v.detail.starts_with("k = 2"));
        let q72 = make_q(7, 2).unwrap();
        assert_eq!(check_gamma(&q72).unwrap().satisfied, gamma_by_subsets(&q72));
        assert!(!check_gamma(&make_complete(2, 2).unwrap()).unwrap().applicable);
    }

    #[test]
    fn gamma_shortcut_matches_subset_enumeration() {
        for n in 3..=4 {
            for code in (0..1u64 << (n * n)).step_by(7) {
                let g = BipartiteGraph::from_code(n, code);
                assert_eq!(check_gamma(&g).unwrap().satisfied, gamma_by_subsets(&g), "{g}");
            }
        }
        for (n, t) in [(7, 2), (7, 3), (7, 4), (8, 3)] {
            let g = make_q(n, t).unwrap();
            assert_eq!(check_gamma(&g).unwrap().satisfied, gamma_by_subsets(&g));
        }
    }

    #[test]
    fn degree_count_examples() {
        assert!(check_degree_count(&make_complete(5, 5).unwrap()).unwrap().certified);
        let v = check_degree_count(&make_q(5, 2).unwrap()).unwrap();
        assert!(!v.satisfied);
        assert!(v.detail.contains("1 x-vertices"));
        assert!(!check_degree_count(&c6()).unwrap().satisfied);
    }

    #[test]
    fn closure_complete_examples() {
        let k44 = make_complete(4, 4).unwrap();
        assert!(check_closure_complete(&k44.without_edge(1, 2)).unwrap().certified);
        assert!(!check_closure_complete(&make_q(5, 2).unwrap()).unwrap().satisfied);
        assert!(!check_closure_complete(&c6()).unwrap().satisfied);
    }

    #[test]
    fn degree_sequence_examples() {
        assert!(check_degree_sequence(&make_complete(4, 4).unwrap()).unwrap().certified);
        let v = check_degree_sequence(&make_q(5, 2).unwrap()).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.detail, "k = 2: d_1 = 2 <= 2 and d_4 = 4 <= 4");
        let v = check_degree_sequence(&c6()).unwrap();
        assert_eq!(v.detail, "k = 2: d_1 = 2 <= 2 and d_2 = 2 <= 2");
        assert!(!check_degree_sequence(&make_complete(2, 2).unwrap()).unwrap().applicable);
    }

    /// A balanced graph on `n + n` vertices with `delta >= 2` and exactly `e` edges:
    /// `K_{n,n}` with edges removed along shifted diagonals.
    fn dense_graph(n: usize, e: usize) -> BipartiteGraph {
        let mut g = make_complete(n, n).unwrap();
        let mut missing = n * n - e;
        'outer: for shift in 0..n {
            for i in 0..n {
                if missing == 0 {
                    break 'outer;
                }
                g = g.without_edge(i, (i + shift) % n);
                missing -= 1;
            }
        }
        g
    }

    #[test]
    fn edge_count_t_examples() {
        // delta = 9 caps k at (n+1)/2 = 5, so the only threshold is 10*6 + 5*6 = 90.
        let g = dense_graph(10, 91);
        assert_eq!(g.min_degree(), 9);
        let v = check_edge_count_t(&g).unwrap();
        assert!(v.certified, "{}", v.detail);
        assert_eq!(v.detail, "k = 5: e = 91 > 90 (maximised at t = 5)");
        assert!(!check_edge_count_t(&dense_graph(10, 90)).unwrap().satisfied);
        let v = check_edge_count_t(&make_complete(5, 5).unwrap()).unwrap();
        assert!(!v.satisfied);
        assert!(v.detail.contains("<= 27"));
        assert!(!check_edge_count_t(&c6()).unwrap().satisfied);
    }

    #[test]
    fn edge_count_k_examples() {
        let v = check_edge_count_k(&dense_graph(10, 87)).unwrap();
        assert!(v.certified);
        assert!(check_edge_count_k(&make_complete(4, 4).unwrap()).unwrap().certified);
        assert!(!check_edge_count_k(&c6()).unwrap().satisfied);
    }

    #[test]
    fn sandwich_matches() {
        assert_eq!(matches_sandwich(&make_r(5, 2).unwrap()).unwrap(), Some(2));
        assert_eq!(matches_sandwich(&make_s(5, 3).unwrap()).unwrap(), Some(3));
        assert_eq!(matches_sandwich(&make_complete(5, 5).unwrap()).unwrap(), None);
        assert_eq!(matches_sandwich(&c6()).unwrap(), Some(2));
    }

    #[test]
    fn spectral_reflexive_q62() {
        let cfg = SpectralConfig::default();
        let v = check_spectral(&make_q(6, 2).unwrap(), &cfg).unwrap();
        assert!(v[0].certified, "{}", v[0].detail);
        assert_eq!(v[0].confidence, Confidence::Exact);
    }

    #[test]
    fn spectral_r62_excluded_by_sandwich() {
        let cfg = SpectralConfig::default();
        let r = make_r(6, 2).unwrap();
        assert_eq!(r.sigma().unwrap(), Some(7));
        let v = check_spectral(&r, &cfg).unwrap();
        assert!(!v[2].certified && !v[3].certified);
    }

    #[test]
    fn spectral_k66_q_condition() {
        let cfg = SpectralConfig::default();
        let v = check_spectral(&make_complete(6, 6).unwrap(), &cfg).unwrap();
        assert!(v[1].certified);
        assert_eq!(v[1].confidence, Confidence::NumericWithBand);
    }

    #[test]
    fn spectral_closed_examples() {
        let cfg = SpectralConfig::default();
        let v = check_spectral_closed(&make_complete(7, 7).unwrap(), &cfg).unwrap();
        assert!(v[0].certified && v[1].certified);
        let v = check_spectral_closed(&make_q(7, 2).unwrap(), &cfg).unwrap();
        assert!(v[0].certified, "{}", v[0].detail);
        let v = check_spectral_closed(&c6(), &cfg).unwrap();
        assert!(!v[0].applicable);
    }

    #[test]
    fn band_cases_resolve_exactly_or_stay_inconclusive() {
        let wide = SpectralConfig { tol: DEFAULT_TOL, band: 0.5 };
        // q(G^) = 2 against 3: inside a wide band, settled by the integer test.
        let v = check_spectral(&k44_minus_matching(), &wide).unwrap();
        assert_eq!(v[3].confidence, Confidence::Exact);
        assert!(v[3].certified);
        let v = check_spectral(&k44_minus_matching(), &SpectralConfig::default()).unwrap();
        assert_eq!(v[3].confidence, Confidence::NumericWithBand);
        // rho(K_{6,6} - I) = 5 against rho(Q_6^2): no exact test for that threshold.
        let g = BipartiteGraph::from_rows(6, 6, &[62, 61, 59, 55, 47, 31]).unwrap();
        let v = check_spectral(&g, &wide).unwrap();
        assert_eq!(v[0].confidence, Confidence::Inconclusive);
        assert!(!v[0].certified);
        assert!(v[0].detail.ends_with("within decision band"));
    }

    #[test]
    fn reports() {
        let cfg = SpectralConfig::default();
        let r = full_report(&make_q(5, 2).unwrap(), true, &cfg).unwrap();
        assert_eq!(r.verdicts.len(), ConditionId::ALL.len());
        let ids: Vec<_> = r.verdicts.iter().map(|v| v.id).collect();
        assert_eq!(ids, ConditionId::ALL.to_vec());
        assert!(r.oracle.as_ref().unwrap().weakly_hc);
        let r = full_report(&k44_minus_matching(), true, &cfg).unwrap();
        assert!(r.verdicts[0].certified);
        let r = full_report(&make_r(5, 2).unwrap(), true, &cfg).unwrap();
        assert!(r.certified().next().is_none());
        assert_eq!(r.sandwich, Some(2));
        assert!(!r.oracle.unwrap().weakly_hc);
    }

    #[test]
    fn group_names_round_trip() {
        for name in CheckerGroup::NAMES {
            assert_eq!(name.parse::<CheckerGroup>().unwrap().as_str(), name);
        }
        assert!("bogus".parse::<CheckerGroup>().is_err());
    }

    #[test]
    fn containment_premise_cases() {
        let k44 = make_complete(4, 4).unwrap();
        assert!(containment_premise(&k44, 1).unwrap());
        assert!(!containment_premise(&c6(), 1).unwrap());
    }
}
