//! Minimal-subtraction renormalization.
//!
//! The cutoff phase shift `delta(k, eps) = -(pi/2) \int_eps^\infty g` has a
//! Laurent expansion in `eps` whose negative powers are known analytically
//! from the integrand series. Subtracting them leaves
//! `F(eps) = delta + O(eps)`, an entire function of `eps`, which is
//! polynomially extrapolated to `eps = 0`.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use crate::acont::born_integrand;
use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;
use crate::quadrature::{integrate_adaptive_with, integrate_tail_with, QuadOptions, QuadResult, TailOptions};
use crate::series::{counterterm, default_truncation_order, integrand_series, Counterterm, Pole};
use crate::types::{Diagnostics, PhaseShiftResult, ScatteringConfig, Scheme};

/// Relative rounding floor assumed for a cutoff integral.
const ROUNDING_FLOOR: f64 = 1e-16;

/// The oscillatory tail starts no closer than this many half periods.
const HEAD_HALF_PERIODS: f64 = 2.0;

/// `-(pi/2) \int_eps^\infty r V J_nu^2(kr) dr` at `n = 3`.
pub fn cutoff_phase_shift(v: &PowerLawPotential, cfg: &ScatteringConfig, eps: f64, tol: f64) -> Result<QuadResult> {
    cfg.require_three_d()?;
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("cutoff must be positive, got {eps}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if v.is_zero() {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, evaluations: 0, converged: true });
    }
    let (k, nu) = (cfg.k(), cfg.nu());
    let g = |r: f64| born_integrand(v, k, nu, r);
    let half_period = PI / (2.0 * k);
    let split = eps.max(HEAD_HALF_PERIODS * half_period);
    let piece_tol = tol / (2.0 * FRAC_PI_2);

    // The steep part near the cutoff goes to the adaptive rule with a
    // relative target, since its size can dwarf the requested tolerance.
    let head = integrate_adaptive_with(
        g,
        eps,
        split,
        &QuadOptions { abs_tol: piece_tol, rel_tol: 1e-15, ..QuadOptions::default() },
    )?;
    let tail = integrate_tail_with(g, split, half_period, &TailOptions { tol: piece_tol, ..TailOptions::default() })?;
    Ok(QuadResult {
        value: -FRAC_PI_2 * (head.value + tail.value),
        error_estimate: FRAC_PI_2 * (head.error_estimate + tail.error_estimate),
        evaluations: head.evaluations + tail.evaluations,
        converged: head.converged && tail.converged,
    })
}

/// Pure-pole part of `delta(k, eps)`: `sum_n (-(pi/2) a_n) eps^(1-n) / (n-1)`.
pub fn pole_part(ct: &Counterterm, eps: f64) -> f64 {
    ct.poles()
        .iter()
        .map(|p| {
            let n = p.power as i32;
            -FRAC_PI_2 * p.coefficient * eps.powi(1 - n) / (n - 1) as f64
        })
        .sum()
}

/// `(-(pi/2) a_n / (n-1), n-1)` pairs: the coefficients of `eps^-(n-1)` in
/// the pole part.
pub fn pole_coefficients(ct: &Counterterm) -> Vec<Pole> {
    ct.poles()
        .iter()
        .map(|p| Pole {
            coefficient: -FRAC_PI_2 * p.coefficient / (p.power - 1) as f64,
            power: p.power - 1,
        })
        .collect()
}

/// Size of the rounding error left in `F(eps)` after the pole subtraction.
fn cancellation_floor(ct: &Counterterm, eps: f64) -> f64 {
    ROUNDING_FLOOR
        * ct.poles()
            .iter()
            .map(|p| (FRAC_PI_2 * p.coefficient * eps.powi(1 - p.power as i32) / (p.power - 1) as f64).abs())
            .sum::<f64>()
}

/// Geometric grid `DEFAULT_GRID_START / k * DEFAULT_GRID_RATIO^i`.
///
/// The smallest point stays at `k eps ~ 0.27`; going lower makes the pole
/// subtraction lose more digits than higher extrapolation order recovers.
pub fn default_eps_grid(k: f64) -> Vec<f64> {
    (0..DEFAULT_GRID_POINTS)
        .map(|i| DEFAULT_GRID_START / k * DEFAULT_GRID_RATIO.powi(i as i32))
        .collect()
}

pub const DEFAULT_GRID_START: f64 = 1.6;
pub const DEFAULT_GRID_RATIO: f64 = 0.7;
pub const DEFAULT_GRID_POINTS: usize = 6;
pub const DEFAULT_TOL: f64 = 1e-5;

/// Neville table for the value at zero of the interpolating polynomial.
/// Row `i` holds `T[i][0..=i]`; `T[i][j]` uses grid points `i-j..=i`.
pub fn neville_to_zero(x: &[f64], y: &[f64]) -> Vec<Vec<f64>> {
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let mut row = vec![y[i]];
        for j in 1..=i {
            let prev = &table[i - 1];
            let t = row[j - 1] + (row[j - 1] - prev[j - 1]) * x[i] / (x[i - j] - x[i]);
            row.push(t);
        }
        table.push(row);
    }
    table
}

fn check_grid(eps_grid: &[f64]) -> Result<()> {
    if eps_grid.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "cutoff grid needs at least 3 points, got {}",
            eps_grid.len()
        )));
    }
    if eps_grid.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
        return Err(Error::InvalidArgument("cutoff grid values must be positive and finite".into()));
    }
    if eps_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("cutoff grid must be strictly decreasing".into()));
    }
    Ok(())
}

/// Minimal-subtraction phase shift at `n = 3`.
///
/// `tol` bounds the absolute error targeted at each grid point and the
/// tolerable cancellation floor; grid points below that floor are rejected.
pub fn phase_shift_minsub(
    v: &PowerLawPotential,
    cfg: &ScatteringConfig,
    eps_grid: &[f64],
    tol: f64,
) -> Result<PhaseShiftResult> {
    cfg.require_three_d()?;
    check_grid(eps_grid)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (k, nu) = (cfg.k(), cfg.nu());
    let ct = counterterm(&integrand_series(v, k, nu, default_truncation_order(v, nu)?)?)?;

    if let Some(&eps) = eps_grid.iter().find(|&&e| cancellation_floor(&ct, e) > tol) {
        return Err(Error::ExtrapolationUnstable {
            reason: format!(
                "cutoff {eps} leaves a rounding floor of {:.1e} above tolerance {tol:.1e}",
                cancellation_floor(&ct, eps)
            ),
        });
    }

    let cutoffs = eps_grid
        .par_iter()
        .map(|&eps| cutoff_phase_shift(v, cfg, eps, tol))
        .collect::<Result<Vec<_>>>()?;
    let finite_parts: Vec<f64> = eps_grid
        .iter()
        .zip(&cutoffs)
        .map(|(&eps, c)| c.value - pole_part(&ct, eps))
        .collect();

    let table = neville_to_zero(eps_grid, &finite_parts);
    let n = table.len();
    let last = &table[n - 1];
    let value = last[n - 1];
    let spread = (last[n - 1] - last[n - 2]).abs();

    let diagonal: Vec<f64> = table.iter().map(|row| row[row.len() - 1]).collect();
    let steps: Vec<f64> = diagonal.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    if !value.is_finite() || diverging(&steps, value) {
        return Err(Error::ExtrapolationUnstable {
            reason: format!("successive extrapolants {steps:?} do not settle"),
        });
    }

    let quad_error: f64 = cutoffs.iter().map(|c| c.error_estimate).sum();
    let floor: f64 = eps_grid.iter().map(|&e| cancellation_floor(&ct, e)).sum();

    Ok(PhaseShiftResult {
        value,
        scheme: Scheme::Minsub,
        error_estimate: spread + quad_error + floor,
        diagnostics: Diagnostics::Minsub {
            eps_grid: eps_grid.to_vec(),
            pole_coefficients: pole_coefficients(&ct),
            finite_parts,
            extrapolation_order: n - 1,
            table,
        },
    })
}

/// The last diagonal step grew and is too large to be rounding noise.
fn diverging(steps: &[f64], value: f64) -> bool {
    match steps {
        [.., prev, last] => last > prev && *last > 1e-3 * (1.0 + value.abs()),
        _ => false,
    }
}
