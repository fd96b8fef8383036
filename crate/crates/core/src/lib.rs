//! Balanced bipartite graphs and sufficient conditions for weak
//! Hamilton-connectedness: degree, closure, edge-count and spectral checkers,
//! with a brute-force oracle and a sweep harness to test them against.
//!
//! The spectral routines are generic over the scalar type (`f32` or `f64`);
//! the aliases below fix it to `f64`, which is what the checkers use.

pub mod closure;
pub mod conditions;
pub mod families;
pub mod graph;
pub mod iso;
pub mod oracle;
pub mod spectral;
pub mod sweep;

pub use closure::{b_closure, b_closure_ordered, is_closed, ClosureTrace};
pub use conditions::{
    condition_report, full_report, matches_sandwich, run_checkers, CheckError, CheckerGroup,
    ConditionId, ConditionReport, Confidence, SpectralConfig, Verdict,
};
pub use families::{make_complete, make_q, make_r, make_s, FamilyError, FamilySpec};
pub use graph::{BipartiteGraph, DegreeSequence, GraphError, Vertex};
pub use iso::{is_isomorphic, Isomorphism};
pub use oracle::{
    hamilton_cycle_through_edge, hamilton_path_between, is_weakly_hc, OracleError, OracleResult,
};
pub use spectral::{Scalar, SpectralError};
pub use sweep::{enumerate_graphs, verify_implication, SweepConfig, SweepError, SweepMode, SweepReport};

pub type Estimate = spectral::EigenEstimate<f64>;
pub type Spectrum = spectral::SpectralSummary<f64>;
pub type Bounds = spectral::BoundReport<f64>;
pub type ClosedForm = spectral::ClosedForm<f64>;

pub fn spectral_radius(g: &BipartiteGraph, tol: f64) -> Result<Estimate, SpectralError> {
    spectral::adjacency_spectral_radius(g, tol)
}

pub fn signless_radius(g: &BipartiteGraph, tol: f64) -> Result<Estimate, SpectralError> {
    spectral::signless_laplacian_spectral_radius(g, tol)
}
