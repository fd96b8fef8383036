//! Spectral radius `rho(G)` of the adjacency matrix and `q(G)` of `D + A`.
//!
//! Both are computed by power iteration, one connected component at a time, and
//! the global value is the maximum over components. `rho` is taken as the square
//! root of the top eigenvalue of the Gram matrix `B B^T` of the biadjacency
//! block, which sidesteps the `+rho / -rho` pair in a bipartite adjacency
//! spectrum. All routines are generic over the floating-point scalar.

pub mod dense;
pub mod exact;

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::families::{FamilyError, FamilySpec};
use crate::graph::BipartiteGraph;

/// Floating-point scalar the spectral code runs on (`f32` or `f64`).
pub trait Scalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("no closed form is known for {0}")]
    NoClosedForm(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Largest eigenvalue with its convergence certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenEstimate<F> {
    pub value: F,
    pub iterations: usize,
    /// Largest component residual `||Mv - theta v||`, in the units of `value`.
    pub residual: F,
    pub tolerance: F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSummary<F> {
    pub rho: F,
    pub q: F,
    pub iterations: usize,
    pub residual: F,
    pub tolerance: F,
}

fn check_tol<F: Scalar>(tol: F) -> Result<(), SpectralError> {
    if tol > F::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::NonPositiveTolerance)
    }
}

fn lit<F: Scalar>(x: f64) -> F {
    F::from_f64(x).unwrap()
}

/// Deterministic positive start vector: all ones plus a small fixed jitter.
fn start_vector<F: Scalar>(dim: usize) -> Vec<F> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    (0..dim)
        .map(|_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            let jitter = (state >> 40) as f64 / (1u64 << 24) as f64;
            lit::<F>(1.0 + 0.25 * jitter)
        })
        .collect()
}

struct Converged<F> {
    theta: F,
    iterations: usize,
    residual: F,
}

/// Power iteration on a symmetric nonnegative matrix. `accept(theta, r)` decides
/// whether the Rayleigh quotient `theta` with residual `r` has converged.
fn power_iterate<F: Scalar>(
    m: &[F],
    dim: usize,
    accept: impl Fn(F, F) -> bool,
) -> Result<Converged<F>, SpectralError> {
    let mut v = start_vector::<F>(dim);
    normalize(&mut v);
    let mut w = vec![F::zero(); dim];
    let mut residual = F::infinity();
    for it in 1..=MAX_ITERATIONS {
        for (r, wi) in w.iter_mut().enumerate() {
            *wi = m[r * dim..(r + 1) * dim]
                .iter()
                .zip(&v)
                .fold(F::zero(), |acc, (&a, &b)| acc + a * b);
        }
        let theta = v.iter().zip(&w).fold(F::zero(), |acc, (&a, &b)| acc + a * b);
        residual = v
            .iter()
            .zip(&w)
            .fold(F::zero(), |acc, (&vi, &wi)| acc + (wi - theta * vi) * (wi - theta * vi))
            .sqrt();
        if accept(theta, residual) {
            return Ok(Converged { theta, iterations: it, residual });
        }
        let norm = w.iter().fold(F::zero(), |acc, &x| acc + x * x).sqrt();
        if norm == F::zero() {
            return Ok(Converged { theta: F::zero(), iterations: it, residual: F::zero() });
        }
        for (vi, &wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    Err(SpectralError::NotConverged {
        iterations: MAX_ITERATIONS,
        residual: residual.to_f64().unwrap_or(f64::NAN),
    })
}

fn normalize<F: Scalar>(v: &mut [F]) {
    let norm = v.iter().fold(F::zero(), |acc, &x| acc + x * x).sqrt();
    if norm > F::zero() {
        v.iter_mut().for_each(|x| *x = *x / norm);
    }
}

fn fold_components<F: Scalar>(
    g: &BipartiteGraph,
    tol: F,
    per_component: impl Fn(&BipartiteGraph) -> Result<(F, usize, F), SpectralError>,
) -> Result<EigenEstimate<F>, SpectralError> {
    check_tol(tol)?;
    let mut est = EigenEstimate { value: F::zero(), iterations: 0, residual: F::zero(), tolerance: tol };
    for (xs, ys) in g.nontrivial_components() {
        let comp = g.induced(xs, ys);
        let (value, iterations, residual) = per_component(&comp)?;
        est.value = est.value.max(value);
        est.iterations += iterations;
        est.residual = est.residual.max(residual);
    }
    Ok(est)
}

/// `rho(G)`: largest adjacency eigenvalue. Zero for edgeless graphs.
pub fn adjacency_spectral_radius<F: Scalar>(
    g: &BipartiteGraph,
    tol: F,
) -> Result<EigenEstimate<F>, SpectralError> {
    let two = lit::<F>(2.0);
    fold_components(g, tol, |comp| {
        let dim = comp.x_count();
        let gram = dense::gram_matrix::<F>(comp);
        // An eigenvalue error of d in theta = rho^2 is about d / (2 rho) in rho.
        let c = power_iterate(&gram, dim, |theta, r| {
            r <= tol * two * theta.max(F::one()).sqrt()
        })?;
        let rho = c.theta.max(F::zero()).sqrt();
        Ok((rho, c.iterations, c.residual / (two * rho.max(F::one()))))
    })
}

/// `q(G)`: largest eigenvalue of `D + A`. Zero for edgeless graphs.
pub fn signless_laplacian_spectral_radius<F: Scalar>(
    g: &BipartiteGraph,
    tol: F,
) -> Result<EigenEstimate<F>, SpectralError> {
    fold_components(g, tol, |comp| {
        let dim = comp.x_count() + comp.y_count();
        let m = dense::signless_laplacian_matrix::<F>(comp);
        let c = power_iterate(&m, dim, |_, r| r <= tol)?;
        Ok((c.theta, c.iterations, c.residual))
    })
}

pub fn spectral_summary<F: Scalar>(
    g: &BipartiteGraph,
    tol: F,
) -> Result<SpectralSummary<F>, SpectralError> {
    let rho = adjacency_spectral_radius(g, tol)?;
    let q = signless_laplacian_spectral_radius(g, tol)?;
    Ok(SpectralSummary {
        rho: rho.value,
        q: q.value,
        iterations: rho.iterations + q.iterations,
        residual: rho.residual.max(q.residual),
        tolerance: tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormKind {
    Exact,
    /// The true values are strictly larger than the reported ones.
    StrictLowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm<F> {
    pub rho: F,
    pub q: F,
    pub kind: ClosedFormKind,
}

/// Closed-form `(rho, q)` for a family member or its quasi-complement.
///
/// * `K_{m,n}`: exact `(sqrt(mn), m + n)`.
/// * quasi-complement of `Q_n^t`, `R_n^t`, `S_n^t`: exact `(sqrt((t-1)(n-t)), n - 1)`.
/// * `Q_n^t` itself: strict lower bounds `(sqrt(n(n-t+1)), 2n - t + 1)`.
pub fn closed_form_reference<F: Scalar>(
    spec: &FamilySpec,
    quasi_complement: bool,
) -> Result<ClosedForm<F>, ClosedFormError> {
    spec.validate()?;
    let f = |x: usize| F::from_usize(x).unwrap();
    match (*spec, quasi_complement) {
        (FamilySpec::Complete { m, n }, false) => Ok(ClosedForm {
            rho: f(m * n).sqrt(),
            q: f(m + n),
            kind: ClosedFormKind::Exact,
        }),
        (FamilySpec::Q { n, t } | FamilySpec::R { n, t } | FamilySpec::S { n, t }, true) => {
            Ok(ClosedForm {
                rho: f((t - 1) * (n - t)).sqrt(),
                q: f(n - 1),
                kind: ClosedFormKind::Exact,
            })
        }
        (FamilySpec::Q { n, t }, false) => Ok(ClosedForm {
            rho: f(n * (n - t + 1)).sqrt(),
            q: f(2 * n - t + 1),
            kind: ClosedFormKind::StrictLowerBound,
        }),
        (other, complemented) => Err(ClosedFormError::NoClosedForm(if complemented {
            format!("the quasi-complement of {other}")
        } else {
            other.to_string()
        })),
    }
}

/// One bound compared against a computed eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck<F> {
    pub bound: F,
    /// Signed slack in the direction of the inequality; negative means violated.
    pub margin: F,
    pub holds: bool,
}

/// `rho <= sqrt(e)`, `q <= e/n + n`, `rho >= min sqrt(d(u)d(v))`, `q >= min d(u)+d(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport<F> {
    pub rho: F,
    pub q: F,
    pub rho_upper: BoundCheck<F>,
    /// Balanced graphs only.
    pub q_upper: Option<BoundCheck<F>>,
    /// Graphs with at least one edge only.
    pub rho_lower: Option<BoundCheck<F>>,
    pub q_lower: Option<BoundCheck<F>>,
    pub tolerance: F,
    pub iterations: usize,
}

impl<F: Scalar> BoundReport<F> {
    pub fn all_hold(&self) -> bool {
        [Some(self.rho_upper), self.q_upper, self.rho_lower, self.q_lower]
            .iter()
            .flatten()
            .all(|c| c.holds)
    }
}

pub fn spectral_bounds_report<F: Scalar>(
    g: &BipartiteGraph,
    tol: F,
) -> Result<BoundReport<F>, SpectralError> {
    let summary = spectral_summary(g, tol)?;
    let f = |x: usize| F::from_usize(x).unwrap();
    let slack = |bound: F| tol * lit::<F>(10.0) * bound.abs().max(F::one());
    let upper = |value: F, bound: F| {
        let margin = bound - value;
        BoundCheck { bound, margin, holds: margin >= -slack(bound) }
    };
    let lower = |value: F, bound: F| {
        let margin = value - bound;
        BoundCheck { bound, margin, holds: margin >= -slack(bound) }
    };
    let e = g.edge_count();
    let q_upper = g
        .balanced_n()
        .ok()
        .filter(|&n| n > 0)
        .map(|n| upper(summary.q, f(e) / f(n) + f(n)));
    let edge_degrees: Vec<(usize, usize)> =
        g.edges().map(|(i, j)| (g.x_degree(i), g.y_degree(j))).collect();
    let min_product = edge_degrees.iter().map(|&(a, b)| a * b).min();
    let min_sum = edge_degrees.iter().map(|&(a, b)| a + b).min();
    Ok(BoundReport {
        rho: summary.rho,
        q: summary.q,
        rho_upper: upper(summary.rho, f(e).sqrt()),
        q_upper,
        rho_lower: min_product.map(|p| lower(summary.rho, f(p).sqrt())),
        q_lower: min_sum.map(|s| lower(summary.q, f(s))),
        tolerance: tol,
        iterations: summary.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_complete, make_q, make_r, make_s};

    const TOL: f64 = DEFAULT_TOL;

    fn c6() -> BipartiteGraph {
        BipartiteGraph::from_edge_list(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])
            .unwrap()
    }

    #[test]
    fn complete_bipartite_values() {
        let k43 = make_complete(4, 3).unwrap();
        let rho = adjacency_spectral_radius(&k43, TOL).unwrap();
        assert!((rho.value - 12f64.sqrt()).abs() < 1e-9);
        assert!(rho.residual <= TOL);
        let q = signless_laplacian_spectral_radius(&k43, TOL).unwrap();
        assert!((q.value - 7.0).abs() < 1e-9);
    }

    #[test]
    fn edgeless_graph_is_zero() {
        let g = BipartiteGraph::empty(3, 3).unwrap();
        let s = spectral_summary(&g, TOL).unwrap();
        assert_eq!((s.rho, s.q, s.iterations), (0.0, 0.0, 0));
    }

    #[test]
    fn k44_minus_matching_has_radius_three() {
        let g = BipartiteGraph::from_rows(4, 4, &[0b1110, 0b1101, 0b1011, 0b0111]).unwrap();
        let rho = adjacency_spectral_radius(&g, TOL).unwrap().value;
        assert!((rho - 3.0).abs() < 1e-9);
        let oracle: f64 = dense::dense_spectral_radius(&g);
        assert!((rho - oracle).abs() < 1e-9);
    }

    #[test]
    fn complement_of_q52() {
        let h = make_q(5, 2).unwrap().quasi_complement();
        let s = spectral_summary(&h, TOL).unwrap();
        assert!((s.q - 4.0).abs() < 1e-9);
        assert!((s.rho - 3f64.sqrt()).abs() < 1e-9);
        let h = make_s(5, 2).unwrap().quasi_complement();
        let rho = adjacency_spectral_radius(&h, TOL).unwrap().value;
        assert!((rho - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let g = c6();
        assert_eq!(
            adjacency_spectral_radius(&g, 0.0).unwrap_err(),
            SpectralError::NonPositiveTolerance
        );
        assert!(signless_laplacian_spectral_radius(&g, f64::NAN).is_err());
    }

    #[test]
    fn closed_forms() {
        let k: ClosedForm<f64> =
            closed_form_reference(&FamilySpec::Complete { m: 5, n: 4 }, false).unwrap();
        assert_eq!((k.rho, k.q, k.kind), (20f64.sqrt(), 9.0, ClosedFormKind::Exact));
        let qh: ClosedForm<f64> =
            closed_form_reference(&FamilySpec::Q { n: 5, t: 2 }, true).unwrap();
        assert_eq!((qh.rho, qh.q), (3f64.sqrt(), 4.0));
        let q: ClosedForm<f64> =
            closed_form_reference(&FamilySpec::Q { n: 5, t: 2 }, false).unwrap();
        assert_eq!(q.kind, ClosedFormKind::StrictLowerBound);
        let computed = spectral_summary(&make_q(5, 2).unwrap(), TOL).unwrap();
        assert!(computed.rho > q.rho && computed.q > q.q);
        assert!(matches!(
            closed_form_reference::<f64>(&FamilySpec::R { n: 5, t: 2 }, false),
            Err(ClosedFormError::NoClosedForm(_))
        ));
        assert!(matches!(
            closed_form_reference::<f64>(&FamilySpec::Q { n: 5, t: 4 }, true),
            Err(ClosedFormError::Family(_))
        ));
    }

    #[test]
    fn bound_report_tight_cases() {
        let k33 = make_complete(3, 3).unwrap();
        let r = spectral_bounds_report(&k33, TOL).unwrap();
        assert!(r.all_hold());
        assert!(r.rho_upper.margin.abs() < 1e-8);
        let r = spectral_bounds_report(&c6(), TOL).unwrap();
        assert!((r.rho - 2.0).abs() < 1e-9);
        assert!(r.rho_lower.unwrap().margin.abs() < 1e-8);
        let empty = spectral_bounds_report(&BipartiteGraph::empty(2, 2).unwrap(), TOL).unwrap();
        assert!(empty.rho_lower.is_none() && empty.q_lower.is_none());
        let unbalanced = spectral_bounds_report(&make_complete(3, 2).unwrap(), TOL).unwrap();
        assert!(unbalanced.q_upper.is_none());
    }

    #[test]
    fn r_graph_converges() {
        let r = make_r(8, 4).unwrap();
        let rho = adjacency_spectral_radius(&r, TOL).unwrap().value;
        let oracle: f64 = dense::dense_spectral_radius(&r);
        assert!((rho - oracle).abs() < 1e-9);
    }

    #[test]
    fn single_precision_power_iteration() {
        let k33 = make_complete(3, 3).unwrap();
        let rho = adjacency_spectral_radius(&k33, 1e-4f32).unwrap();
        assert!((rho.value - 3.0).abs() < 1e-3);
    }
}
