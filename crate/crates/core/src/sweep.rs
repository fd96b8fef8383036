//! Graph enumeration and the soundness-sweep harness.
//!
//! Random mode draws every cross-pair indicator independently with probability
//! 1/2 from a `ChaCha8Rng` seeded with `seed`, in row-major order, and keeps the
//! first `samples` graphs that pass the filter.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::closure::{b_closure, b_closure_ordered, is_closed};
use crate::conditions::{
    containment_premise, matches_sandwich, run_checkers, CheckerGroup, ConditionId, Confidence,
    SpectralConfig,
};
use crate::graph::{bits, low_mask, BipartiteGraph, GraphError};
use crate::oracle::{is_weakly_hc, OracleError};

/// Largest `n` exhaustive mode accepts without `allow_large`.
pub const EXHAUSTIVE_LIMIT: usize = 4;
/// Largest `n` random mode accepts.
pub const RANDOM_LIMIT: usize = 12;
/// Largest `n` for which isomorph deduplication is offered.
pub const DEDUP_LIMIT: usize = 5;
/// Random mode gives up after this many draws per requested sample.
pub const MAX_DRAWS_PER_SAMPLE: usize = 10_000;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("exhaustive enumeration at n = {0} visits 2^{sq} graphs; pass the override flag to run it anyway (expect hours)", sq = .0 * .0)]
    ExhaustiveRefused(usize),
    #[error("exhaustive enumeration is impossible at n = {0}: bit codes cover n <= 8")]
    ExhaustiveImpossible(usize),
    #[error("random mode supports n <= {RANDOM_LIMIT}, got {0}")]
    RandomTooLarge(usize),
    #[error("isomorph deduplication supports exhaustive sweeps with n <= {DEDUP_LIMIT}, got n = {0}")]
    DedupUnsupported(usize),
    #[error("n must be at least 1")]
    EmptyParts,
    #[error("filter rejected {draws} consecutive draws; only {found} of {wanted} samples found")]
    FilterTooStrict { draws: usize, found: usize, wanted: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive {
        #[serde(skip)]
        allow_large: bool,
    },
    Random { samples: usize, seed: u64 },
}

impl SweepMode {
    pub fn exhaustive() -> Self {
        SweepMode::Exhaustive { allow_large: false }
    }

    pub fn random(samples: usize, seed: u64) -> Self {
        SweepMode::Random { samples, seed }
    }
}

fn check_mode(n: usize, mode: SweepMode) -> Result<(), SweepError> {
    if n == 0 {
        return Err(SweepError::EmptyParts);
    }
    match mode {
        SweepMode::Exhaustive { .. } if n > 8 => Err(SweepError::ExhaustiveImpossible(n)),
        SweepMode::Exhaustive { allow_large: false } if n > EXHAUSTIVE_LIMIT => {
            Err(SweepError::ExhaustiveRefused(n))
        }
        SweepMode::Random { .. } if n > RANDOM_LIMIT => Err(SweepError::RandomTooLarge(n)),
        _ => Ok(()),
    }
}

/// Seeded random balanced graphs passing `filter`, plus the number of draws taken.
pub fn random_graphs(
    n: usize,
    samples: usize,
    seed: u64,
    filter: impl Fn(&BipartiteGraph) -> bool,
) -> Result<(Vec<BipartiteGraph>, usize), SweepError> {
    check_mode(n, SweepMode::random(samples, seed))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = low_mask(n);
    let mut out = Vec::with_capacity(samples);
    let mut draws = 0;
    let budget = samples.saturating_mul(MAX_DRAWS_PER_SAMPLE).max(MAX_DRAWS_PER_SAMPLE);
    let mut rows = vec![0u64; n];
    while out.len() < samples {
        if draws == budget {
            return Err(SweepError::FilterTooStrict { draws, found: out.len(), wanted: samples });
        }
        draws += 1;
        for row in rows.iter_mut() {
            *row = rng.gen::<u64>() & mask;
        }
        let g = BipartiteGraph::from_rows(n, n, &rows)?;
        if filter(&g) {
            out.push(g);
        }
    }
    Ok((out, draws))
}

/// Every graph (exhaustive mode, in bit-code order) or the seeded sample
/// (random mode) that passes `filter`.
pub fn enumerate_graphs<'f>(
    n: usize,
    filter: impl Fn(&BipartiteGraph) -> bool + 'f,
    mode: SweepMode,
) -> Result<Box<dyn Iterator<Item = BipartiteGraph> + 'f>, SweepError> {
    check_mode(n, mode)?;
    Ok(match mode {
        SweepMode::Exhaustive { .. } => {
            let end = 1u64.checked_shl((n * n) as u32).unwrap_or(0);
            let codes: Box<dyn Iterator<Item = u64>> =
                if n * n == 64 { Box::new(0..=u64::MAX) } else { Box::new(0..end) };
            Box::new(codes.map(move |c| BipartiteGraph::from_code(n, c)).filter(move |g| filter(g)))
        }
        SweepMode::Random { samples, seed } => {
            Box::new(random_graphs(n, samples, seed, filter)?.0.into_iter())
        }
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn min_code(rows: &[u64], perms: &[Vec<usize>]) -> u64 {
    let n = rows.len();
    let mut best = u64::MAX;
    for px in perms {
        for py in perms {
            let mut code = 0u64;
            for (i, &r) in rows.iter().enumerate() {
                let mut row = 0u64;
                for j in bits(r) {
                    row |= 1 << py[j];
                }
                code |= row << (px[i] * n);
            }
            best = best.min(code);
        }
    }
    best
}

/// Smallest bit code over all relabelings of `g`, with and without exchanging
/// the parts. Brute force over `2 (n!)^2` labelings.
pub fn canonical_code(g: &BipartiteGraph) -> u64 {
    let perms = permutations(g.x_count());
    canonical_code_with(g, &perms)
}

fn canonical_code_with(g: &BipartiteGraph, perms: &[Vec<usize>]) -> u64 {
    min_code(g.x_rows(), perms).min(min_code(g.y_rows(), perms))
}

/// A graph that broke a checked claim, with 1-based edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Checkers that certified it (violations only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certified_by: Vec<ConditionId>,
    /// First failing pair, 1-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Counterexample {
    fn new(g: &BipartiteGraph) -> Self {
        Self {
            n: g.x_count(),
            edges: g.edges_one_based(),
            certified_by: Vec::new(),
            failing_pair: None,
            note: None,
        }
    }

    pub fn graph(&self) -> Result<BipartiteGraph, GraphError> {
        BipartiteGraph::from_edge_list(self.n, self.n, self.edges.iter().map(|&(x, y)| (x - 1, y - 1)))
    }
}

/// Non-weakly-Hamilton-connected graphs with `sigma = n+1` and how many matched
/// `S_n^t` or `R_n^t`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SandwichStats {
    pub checked: usize,
    pub matched: usize,
    pub discrepancies: Vec<Counterexample>,
}

/// Closed graphs meeting the edge-count premise for some `k`, and the ones
/// lacking `n-k+1` full-degree vertices in either part.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ContainmentStats {
    pub checked: usize,
    pub discrepancies: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub condition: CheckerGroup,
    pub n: usize,
    pub mode: SweepMode,
    pub min_degree: usize,
    pub dedup: bool,
    /// Graphs examined (after the filter).
    pub total: usize,
    /// Graphs generated before filtering.
    pub generated: usize,
    pub certificates: BTreeMap<ConditionId, usize>,
    pub inconclusive: BTreeMap<ConditionId, usize>,
    pub oracle_calls: usize,
    pub violations: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichStats>,
    pub containment: ContainmentStats,
    /// Wall-clock time; excluded from structured output so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.containment.discrepancies.is_empty()
            && self.sandwich.as_ref().is_none_or(|s| s.discrepancies.is_empty())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub group: CheckerGroup,
    pub n: usize,
    pub mode: SweepMode,
    /// Graphs with smaller minimum degree are skipped.
    pub min_degree: usize,
    /// Exhaustive mode only: keep one graph per isomorphism class (the one
    /// whose code is canonical).
    pub dedup: bool,
    pub spectral: SpectralConfig,
}

impl SweepConfig {
    pub fn new(group: CheckerGroup, n: usize, mode: SweepMode) -> Self {
        Self { group, n, mode, min_degree: 0, dedup: false, spectral: SpectralConfig::default() }
    }

    pub fn min_degree(mut self, d: usize) -> Self {
        self.min_degree = d;
        self
    }

    pub fn dedup(mut self, on: bool) -> Self {
        self.dedup = on;
        self
    }
}

#[derive(Default)]
struct Partial {
    total: usize,
    certificates: BTreeMap<ConditionId, usize>,
    inconclusive: BTreeMap<ConditionId, usize>,
    oracle_calls: usize,
    violations: Vec<Counterexample>,
    sandwich: SandwichStats,
    containment: ContainmentStats,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.total += other.total;
        for (id, c) in other.certificates {
            *self.certificates.entry(id).or_default() += c;
        }
        for (id, c) in other.inconclusive {
            *self.inconclusive.entry(id).or_default() += c;
        }
        self.oracle_calls += other.oracle_calls;
        self.violations.extend(other.violations);
        self.sandwich.checked += other.sandwich.checked;
        self.sandwich.matched += other.sandwich.matched;
        self.sandwich.discrepancies.extend(other.sandwich.discrepancies);
        self.containment.checked += other.containment.checked;
        self.containment.discrepancies.extend(other.containment.discrepancies);
        self
    }
}

fn process(g: &BipartiteGraph, cfg: &SweepConfig, acc: &mut Partial) -> Result<(), SweepError> {
    let n = cfg.n;
    acc.total += 1;
    let mut oracle: Option<(bool, Option<(usize, usize)>)> = None;
    let mut ask = |acc: &mut Partial| -> Result<(bool, Option<(usize, usize)>), SweepError> {
        if let Some(r) = oracle {
            return Ok(r);
        }
        acc.oracle_calls += 1;
        let r = is_weakly_hc(g)?;
        oracle = Some((r.weakly_hc, r.failing_pair));
        Ok((r.weakly_hc, r.failing_pair))
    };

    if cfg.group != CheckerGroup::Sandwich {
        let verdicts = run_checkers(g, cfg.group, &cfg.spectral)?;
        let mut certified = Vec::new();
        for v in &verdicts {
            if v.certified {
                *acc.certificates.entry(v.id).or_default() += 1;
                certified.push(v.id);
            } else if v.applicable && v.confidence == Confidence::Inconclusive {
                *acc.inconclusive.entry(v.id).or_default() += 1;
            }
        }
        if !certified.is_empty() {
            let (whc, pair) = ask(acc)?;
            if !whc {
                let mut ce = Counterexample::new(g);
                ce.certified_by = certified;
                ce.failing_pair = pair.map(|(x, y)| (x + 1, y + 1));
                acc.violations.push(ce);
            }
        }
    }

    if cfg.group.checks_sandwich() && g.sigma()? == Some(n + 1) {
        let (whc, pair) = ask(acc)?;
        if !whc {
            acc.sandwich.checked += 1;
            if matches_sandwich(g)?.is_some() {
                acc.sandwich.matched += 1;
            } else {
                let mut ce = Counterexample::new(g);
                ce.failing_pair = pair.map(|(x, y)| (x + 1, y + 1));
                ce.note = Some("sigma = n+1, not weakly Hamilton-connected, matches no S_n^t or R_n^t".into());
                acc.sandwich.discrepancies.push(ce);
            }
        }
    }

    if let Some(k) = containment_failure(g, &mut acc.containment.checked)? {
        let mut ce = Counterexample::new(g);
        ce.note = Some(format!("closed, premise holds at k = {k}, but no part has {} full-degree vertices", n - k + 1));
        acc.containment.discrepancies.push(ce);
    }
    Ok(())
}

/// For a closed graph, checks the full-block containment at every `k` whose
/// edge-count premise holds; returns the first failing `k`. `checked` counts
/// graphs where some premise held.
fn containment_failure(g: &BipartiteGraph, checked: &mut usize) -> Result<Option<usize>, GraphError> {
    let n = g.balanced_n()?;
    let ks: Vec<usize> = (1..=n / 2).filter(|&k| containment_premise(g, k).unwrap_or(false)).collect();
    if ks.is_empty() || !is_closed(g)? {
        return Ok(None);
    }
    *checked += 1;
    for k in ks {
        if !g.contains_full_block(n - k + 1)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn run_chunk<I: Iterator<Item = BipartiteGraph>>(
    graphs: I,
    cfg: &SweepConfig,
) -> Result<Partial, SweepError> {
    let mut acc = Partial::default();
    for g in graphs {
        process(&g, cfg, &mut acc)?;
    }
    Ok(acc)
}

/// Runs the selected checkers over the enumerated graphs and confirms every
/// certificate with the oracle. Work is split into fixed chunks processed in
/// parallel and merged in order, so the report does not depend on scheduling.
pub fn verify_implication(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    check_mode(cfg.n, cfg.mode)?;
    let n = cfg.n;
    if cfg.dedup && (n > DEDUP_LIMIT || matches!(cfg.mode, SweepMode::Random { .. })) {
        return Err(SweepError::DedupUnsupported(n));
    }
    let start = Instant::now();
    let perms = if cfg.dedup { permutations(n) } else { Vec::new() };
    let keep = |g: &BipartiteGraph| {
        g.min_degree() >= cfg.min_degree && (!cfg.dedup || canonical_code_with(g, &perms) == g.code())
    };
    let (partials, generated): (Vec<Result<Partial, SweepError>>, usize) = match cfg.mode {
        SweepMode::Exhaustive { .. } => {
            let space: u128 = 1u128 << (n * n);
            let chunks = space.div_ceil(CHUNK as u128) as u64;
            let parts = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = c * CHUNK;
                    let hi = lo.saturating_add(CHUNK - 1).min((space - 1) as u64);
                    run_chunk((lo..=hi).map(|code| BipartiteGraph::from_code(n, code)).filter(keep), cfg)
                })
                .collect();
            (parts, space.min(usize::MAX as u128) as usize)
        }
        SweepMode::Random { samples, seed } => {
            let (graphs, draws) = random_graphs(n, samples, seed, keep)?;
            let parts = graphs
                .par_chunks(256)
                .map(|chunk| run_chunk(chunk.iter().cloned(), cfg))
                .collect();
            (parts, draws)
        }
    };
    let mut acc = Partial::default();
    for p in partials {
        acc = acc.merge(p?);
    }
    let mut certificates = acc.certificates;
    let mut inconclusive = acc.inconclusive;
    for id in group_ids(cfg.group) {
        certificates.entry(id).or_default();
        inconclusive.entry(id).or_default();
    }
    Ok(SweepReport {
        condition: cfg.group,
        n,
        mode: cfg.mode,
        min_degree: cfg.min_degree,
        dedup: cfg.dedup,
        total: acc.total,
        generated,
        certificates,
        inconclusive,
        oracle_calls: acc.oracle_calls,
        violations: acc.violations,
        sandwich: cfg.group.checks_sandwich().then_some(acc.sandwich),
        containment: acc.containment,
        elapsed: start.elapsed(),
    })
}

/// Condition ids produced by a checker group.
pub fn group_ids(group: CheckerGroup) -> Vec<ConditionId> {
    use CheckerGroup as C;
    use ConditionId as I;
    match group {
        C::PairSum => vec![I::PairSum],
        C::Gamma => vec![I::Gamma],
        C::DegreeCount => vec![I::DegreeCount],
        C::ClosureComplete => vec![I::ClosureComplete],
        C::DegreeSequence => vec![I::DegreeSequence],
        C::EdgeCountT => vec![I::EdgeCountT],
        C::EdgeCountK => vec![I::EdgeCountK],
        C::Spectral => vec![
            I::SpectralRho,
            I::SpectralQ,
            I::SpectralRhoComplement,
            I::SpectralQComplement,
        ],
        C::SpectralClosed => vec![I::SpectralClosedRho, I::SpectralClosedQ],
        C::Sandwich => vec![],
        C::All => ConditionId::ALL.to_vec(),
    }
}

/// Whether `g` and its closure agree on weak Hamilton-connectedness.
pub fn closure_preserves_oracle(g: &BipartiteGraph) -> Result<bool, SweepError> {
    let closed = b_closure(g)?.result;
    Ok(is_weakly_hc(g)?.weakly_hc == is_weakly_hc(&closed)?.weakly_hc)
}

/// First nonadjacent pair with degree sum at least `n+2` whose addition changes
/// the oracle verdict.
pub fn single_edge_mismatch(g: &BipartiteGraph) -> Result<Option<(usize, usize)>, SweepError> {
    let n = g.balanced_n()?;
    let base = is_weakly_hc(g)?.weakly_hc;
    for (i, j) in g.non_edges() {
        if g.x_degree(i) + g.y_degree(j) >= n + 2 && is_weakly_hc(&g.with_edge(i, j))?.weakly_hc != base {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

/// Closes `g` under `orders` random scan orders drawn from `rng` and reports
/// whether every result equals the lexicographic closure.
pub fn closure_order_independent<R: Rng>(
    g: &BipartiteGraph,
    orders: usize,
    rng: &mut R,
) -> Result<bool, SweepError> {
    let n = g.balanced_n()?;
    let reference = b_closure(g)?.result;
    let mut order: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    for _ in 0..orders {
        order.shuffle(rng);
        if b_closure_ordered(g, &order)?.result != reference {
            return Ok(false);
        }
    }
    Ok(true)
}
