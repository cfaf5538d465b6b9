//! Numerical integration. Finite intervals use globally adaptive
//! Gauss-Kronrod; infinite oscillatory tails are cut into half-period cells
//! whose partial sums are accelerated. The closed-form s-wave Lennard-Jones
//! tail lives here too, as a reference value.

mod adaptive;
mod closed_form;
mod tail;

use serde::Serialize;

pub use adaptive::integrate_adaptive_with;
pub use closed_form::tail_closed_form_swave;
pub use tail::integrate_tail_with;

use crate::error::Result;

/// Value and diagnostics of a numerical integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// `error_estimate` met the requested tolerance.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
    /// Segments narrower than `min_width * max(1, b - a)` are not bisected.
    pub min_width: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_evals: 1_000_000,
            min_width: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailOptions {
    /// Absolute tolerance on the accelerated tail.
    pub tol: f64,
    /// Per-cell absolute tolerance, as a fraction of `tol`.
    pub cell_tol_fraction: f64,
    pub cell_rel_tol: f64,
    pub max_cells: usize,
    /// Highest Levin transform order.
    pub max_order: usize,
    /// Whole periods summed before convergence is tested.
    pub min_periods: usize,
}

impl Default for TailOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            cell_tol_fraction: 1e-3,
            cell_rel_tol: 1e-14,
            max_cells: 10_000,
            max_order: 10,
            min_periods: 6,
        }
    }
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive_with(
        f,
        a,
        b,
        &QuadOptions {
            abs_tol: tol,
            ..QuadOptions::default()
        },
    )
}

/// `\int_a^\infty f` for an integrand oscillating with the given half period.
pub fn integrate_tail_oscillatory<F>(f: F, a: f64, half_period: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_tail_with(
        f,
        a,
        half_period,
        &TailOptions {
            tol,
            ..TailOptions::default()
        },
    )
}
