//! Text and structured (JSON) renderings of command results. Structured
//! output uses 1-based vertex labels and never includes timings.

use std::fmt::Write as _;

use serde::Serialize;
use whc_core::spectral::BoundCheck;
use whc_core::sweep::Counterexample;
use whc_core::{
    Bounds, ClosureTrace, ConditionReport, DegreeSequence, OracleResult, SweepMode, SweepReport,
    Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn one_based(pair: Option<(usize, usize)>) -> Option<(usize, usize)> {
    pair.map(|(x, y)| (x + 1, y + 1))
}

#[derive(Serialize)]
struct GraphView<'a> {
    n: usize,
    e: usize,
    delta: usize,
    sigma: Option<usize>,
    degree_sequence: &'a DegreeSequence,
}

#[derive(Serialize)]
struct OracleView {
    weakly_hc: bool,
    failing_pair: Option<(usize, usize)>,
}

#[derive(Serialize)]
struct CheckView<'a> {
    graph: GraphView<'a>,
    verdicts: &'a [Verdict],
    sandwich: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleView>,
}

pub fn check_structured(r: &ConditionReport) -> String {
    let g = &r.graph;
    to_json(&CheckView {
        graph: GraphView { n: g.n, e: g.e, delta: g.delta, sigma: g.sigma, degree_sequence: &g.degree_sequence },
        verdicts: &r.verdicts,
        sandwich: r.sandwich,
        oracle: r.oracle.as_ref().map(|o| OracleView { weakly_hc: o.weakly_hc, failing_pair: one_based(o.failing_pair) }),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn check_text(r: &ConditionReport) -> String {
    let g = &r.graph;
    let mut out = String::new();
    let sigma = g.sigma.map_or("none (complete)".to_string(), |s| s.to_string());
    writeln!(out, "graph     n = {}, e = {}, delta = {}, sigma = {sigma}", g.n, g.e, g.delta).unwrap();
    writeln!(out, "degrees   x: {} | y: {}", join(&g.degree_sequence.x), join(&g.degree_sequence.y)).unwrap();
    writeln!(out).unwrap();
    let width = r.verdicts.iter().map(|v| v.id.as_str().len()).max().unwrap_or(9).max(9);
    writeln!(out, "{:<width$}  {:<10} {:<9} {:<9} {:<17} detail", "condition", "applicable", "satisfied", "certified", "confidence").unwrap();
    for v in &r.verdicts {
        writeln!(
            out,
            "{:<width$}  {:<10} {:<9} {:<9} {:<17} {}",
            v.id.as_str(),
            yes_no(v.applicable),
            yes_no(v.satisfied),
            yes_no(v.certified),
            v.confidence.to_string(),
            v.detail
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    match r.sandwich {
        Some(t) => writeln!(out, "sandwich  isomorphic to S_{n}^{t} or R_{n}^{t}", n = g.n).unwrap(),
        None => writeln!(out, "sandwich  no S_n^t or R_n^t match").unwrap(),
    }
    if let Some(o) = &r.oracle {
        writeln!(out, "oracle    {}", oracle_line(o.weakly_hc, o.failing_pair)).unwrap();
    }
    out
}

fn oracle_line(weakly_hc: bool, failing_pair: Option<(usize, usize)>) -> String {
    match (weakly_hc, failing_pair) {
        (true, _) => "weakly Hamilton-connected".to_string(),
        (false, Some((x, y))) => {
            format!("not weakly Hamilton-connected: no Hamilton path from x{} to y{}", x + 1, y + 1)
        }
        (false, None) => "not weakly Hamilton-connected".to_string(),
    }
}

#[derive(Serialize)]
struct WitnessView {
    x: usize,
    y: usize,
    path: Vec<String>,
}

#[derive(Serialize)]
struct OracleReportView {
    n: usize,
    weakly_hc: bool,
    failing_pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_paths: Option<Vec<WitnessView>>,
}

fn witnesses(r: &OracleResult) -> Option<Vec<WitnessView>> {
    r.witness_paths.as_ref().map(|paths| {
        paths
            .iter()
            .map(|(&(x, y), p)| WitnessView { x: x + 1, y: y + 1, path: p.iter().map(|v| v.to_string()).collect() })
            .collect()
    })
}

pub fn oracle_structured(n: usize, r: &OracleResult) -> String {
    to_json(&OracleReportView {
        n,
        weakly_hc: r.weakly_hc,
        failing_pair: one_based(r.failing_pair),
        witness_paths: witnesses(r),
    })
}

pub fn oracle_text(n: usize, r: &OracleResult) -> String {
    let mut out = format!("n = {n}: {}\n", oracle_line(r.weakly_hc, r.failing_pair));
    for w in witnesses(r).unwrap_or_default() {
        writeln!(out, "x{} -> y{}: {}", w.x, w.y, w.path.join(" ")).unwrap();
    }
    out
}

#[derive(Serialize)]
struct ClosureView {
    n: usize,
    rounds: usize,
    added_edges: Vec<(usize, usize)>,
    complete: bool,
    closure: ClosedGraphView,
}

#[derive(Serialize)]
struct ClosedGraphView {
    e: usize,
    edges: Vec<(usize, usize)>,
}

pub fn closure_structured(trace: &ClosureTrace) -> String {
    to_json(&ClosureView {
        n: trace.result.x_count(),
        rounds: trace.rounds,
        added_edges: trace.added_edges.iter().map(|&(x, y)| (x + 1, y + 1)).collect(),
        complete: trace.result.is_complete_bipartite(),
        closure: ClosedGraphView { e: trace.result.edge_count(), edges: trace.result.edges_one_based() },
    })
}

pub fn closure_text(trace: &ClosureTrace) -> String {
    let mut out = String::new();
    let added: Vec<String> = trace.added_edges.iter().map(|&(x, y)| format!("x{}y{}", x + 1, y + 1)).collect();
    writeln!(out, "added {} edge(s) in {} round(s): {}", added.len(), trace.rounds, if added.is_empty() { "-".to_string() } else { added.join(" ") }).unwrap();
    writeln!(
        out,
        "closure has {} edges{}",
        trace.result.edge_count(),
        if trace.result.is_complete_bipartite() { " (complete bipartite)" } else { "" }
    )
    .unwrap();
    out.push_str(&crate::format::write_graph_file(&trace.result));
    out
}

#[derive(Serialize)]
struct SpectrumView<'a> {
    rho: f64,
    q: f64,
    iterations: usize,
    residual: f64,
    tolerance: f64,
    bounds: &'a Bounds,
}

pub fn spectrum_structured(summary: &whc_core::Spectrum, bounds: &Bounds) -> String {
    to_json(&SpectrumView {
        rho: summary.rho,
        q: summary.q,
        iterations: summary.iterations,
        residual: summary.residual,
        tolerance: summary.tolerance,
        bounds,
    })
}

pub fn spectrum_text(summary: &whc_core::Spectrum, bounds: &Bounds) -> String {
    let mut out = String::new();
    writeln!(out, "rho  {:.12}", summary.rho).unwrap();
    writeln!(out, "q    {:.12}", summary.q).unwrap();
    writeln!(out, "iterations {}, residual {:.3e}, tolerance {:.1e}", summary.iterations, summary.residual, summary.tolerance).unwrap();
    writeln!(out).unwrap();
    let mut line = |name: &str, rel: &str, b: Option<BoundCheck<f64>>| match b {
        Some(b) => writeln!(out, "{name:<26} {rel} {:<16.12} {}", b.bound, if b.holds { "holds" } else { "VIOLATED" }).unwrap(),
        None => writeln!(out, "{name:<26} not applicable").unwrap(),
    };
    line("rho <= sqrt(e)", "<=", Some(bounds.rho_upper));
    line("q <= e/n + n", "<=", bounds.q_upper);
    line("rho >= min sqrt(d(u)d(v))", ">=", bounds.rho_lower);
    line("q >= min d(u)+d(v)", ">=", bounds.q_lower);
    out
}

pub fn sweep_structured(r: &SweepReport) -> String {
    to_json(r)
}

fn counterexample_line(c: &Counterexample) -> String {
    let edges: Vec<String> = c.edges.iter().map(|(x, y)| format!("x{x}y{y}")).collect();
    let mut s = format!("n = {}, edges [{}]", c.n, edges.join(", "));
    if !c.certified_by.is_empty() {
        let ids: Vec<&str> = c.certified_by.iter().map(|i| i.as_str()).collect();
        write!(s, "; certified by {}", ids.join(", ")).unwrap();
    }
    if let Some((x, y)) = c.failing_pair {
        write!(s, "; no Hamilton path x{x} to y{y}").unwrap();
    }
    if let Some(note) = &c.note {
        write!(s, "; {note}").unwrap();
    }
    s
}

pub fn sweep_text(r: &SweepReport) -> String {
    let mut out = String::new();
    let mode = match r.mode {
        SweepMode::Exhaustive { .. } => "exhaustive".to_string(),
        SweepMode::Random { samples, seed } => format!("random, {samples} samples, seed {seed}"),
    };
    writeln!(out, "condition {}, n = {}, {mode}", r.condition, r.n).unwrap();
    let mut filters = Vec::new();
    if r.min_degree > 0 {
        filters.push(format!("min degree {}", r.min_degree));
    }
    if r.dedup {
        filters.push("one graph per isomorphism class".to_string());
    }
    let filters = if filters.is_empty() { String::new() } else { format!(" ({})", filters.join(", ")) };
    writeln!(out, "graphs examined {} of {} generated{filters}", r.total, r.generated).unwrap();
    writeln!(out, "oracle calls {}", r.oracle_calls).unwrap();
    if !r.certificates.is_empty() {
        writeln!(out).unwrap();
        let width = r.certificates.keys().map(|k| k.as_str().len()).max().unwrap_or(9).max(9);
        writeln!(out, "{:<width$}  {:>12} {:>12}", "condition", "certificates", "inconclusive").unwrap();
        for (id, c) in &r.certificates {
            let inc = r.inconclusive.get(id).copied().unwrap_or(0);
            writeln!(out, "{:<width$}  {c:>12} {inc:>12}", id.as_str()).unwrap();
        }
    }
    writeln!(out).unwrap();
    writeln!(out, "violations {}", r.violations.len()).unwrap();
    for v in &r.violations {
        writeln!(out, "  {}", counterexample_line(v)).unwrap();
    }
    if let Some(s) = &r.sandwich {
        writeln!(out, "sandwich: {} non-weakly-Hamilton-connected graphs with sigma = n+1, {} matched, {} discrepancies", s.checked, s.matched, s.discrepancies.len()).unwrap();
        for d in &s.discrepancies {
            writeln!(out, "  {}", counterexample_line(d)).unwrap();
        }
    }
    writeln!(out, "containment: {} closed graphs checked, {} discrepancies", r.containment.checked, r.containment.discrepancies.len()).unwrap();
    for d in &r.containment.discrepancies {
        writeln!(out, "  {}", counterexample_line(d)).unwrap();
    }
    writeln!(out, "elapsed {:.3} s", r.elapsed.as_secs_f64()).unwrap();
    writeln!(out, "result {}", if r.passed() { "PASS" } else { "FAIL" }).unwrap();
    out
}
