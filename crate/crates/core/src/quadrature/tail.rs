use super::adaptive::integrate_adaptive_with;
use super::{QuadOptions, QuadResult, TailOptions};
use crate::error::{Error, Result};

/// Share of the tolerance that amplified rounding may consume.
const NOISE_BUDGET: f64 = 1.0;

/// `\int_a^\infty f` over half-period cells with Levin-u acceleration of the
/// partial sums taken at whole periods (pairs of cells).
pub fn integrate_tail_with<F>(f: F, a: f64, half_period: f64, opts: &TailOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "tail start must be positive and finite, got {a}"
        )));
    }
    if !(half_period > 0.0) || !half_period.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "half period must be positive and finite, got {half_period}"
        )));
    }
    let cell_opts = QuadOptions {
        abs_tol: opts.tol * opts.cell_tol_fraction,
        rel_tol: opts.cell_rel_tol,
        ..QuadOptions::default()
    };

    let mut partial_sums: Vec<f64> = Vec::new();
    let mut estimates: Vec<f64> = Vec::new();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut quad_error = 0.0;
    let mut evaluations = 0;
    let mut all_cells_converged = true;
    let mut cells = 0;

    while cells + 2 <= opts.max_cells {
        for _ in 0..2 {
            let lo = a + cells as f64 * half_period;
            let hi = a + (cells + 1) as f64 * half_period;
            let r = integrate_adaptive_with(&f, lo, hi, &cell_opts)?;
            sum += r.value;
            abs_sum += r.value.abs();
            quad_error += r.error_estimate;
            evaluations += r.evaluations;
            all_cells_converged &= r.converged;
            cells += 1;
        }
        partial_sums.push(sum);
        let noise = 4.0 * f64::EPSILON * abs_sum;
        estimates.push(stable_estimate(&partial_sums, opts.max_order, noise, NOISE_BUDGET * opts.tol));

        let n = estimates.len();
        if n < opts.min_periods.max(3) {
            continue;
        }
        let d1 = (estimates[n - 1] - estimates[n - 2]).abs();
        let d2 = (estimates[n - 2] - estimates[n - 3]).abs();
        if d1 + d2 <= 0.5 * opts.tol {
            let error_estimate = d1 + d2 + quad_error;
            return Ok(QuadResult {
                value: estimates[n - 1],
                error_estimate,
                evaluations,
                converged: all_cells_converged && error_estimate <= opts.tol,
            });
        }
    }
    let n = estimates.len();
    let spread = if n >= 2 {
        (estimates[n - 1] - estimates[n - 2]).abs()
    } else {
        f64::INFINITY
    };
    Err(Error::NoConvergence {
        value: estimates.last().copied().unwrap_or(sum),
        error_estimate: spread + quad_error,
        evaluations,
    })
}

/// Levin u-transform (beta = 1) of the last `order + 1` partial sums.
///
/// Falls back to the raw partial sum when a term vanishes exactly, which
/// happens for identically zero integrands.
#[cfg(test)]
fn levin_u(partial_sums: &[f64], max_order: usize) -> f64 {
    levin_u_conditioned(partial_sums, max_order).0
}

/// As [`levin_u`], also returning the factor by which noise in the partial
/// sums is amplified (`sum |c_j| / |sum c_j|` over the transform weights).
pub(crate) fn levin_u_conditioned(partial_sums: &[f64], max_order: usize) -> (f64, f64) {
    let len = partial_sums.len();
    let last = partial_sums[len - 1];
    if len < 2 || max_order == 0 {
        return (last, 1.0);
    }
    let order = max_order.min(len - 1);
    let start = len - 1 - order;
    let term = |m: usize| {
        if m == 0 {
            partial_sums[0]
        } else {
            partial_sums[m] - partial_sums[m - 1]
        }
    };
    let kf = order as f64;
    let base = (start + order + 1) as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut mass = 0.0;
    let mut binom = 1.0;
    for j in 0..=order {
        let m = start + j;
        let a = term(m);
        if a == 0.0 || !a.is_finite() {
            return (last, 1.0);
        }
        let omega = (m as f64 + 1.0) * a;
        let weight = binom * ((m as f64 + 1.0) / base).powi(order as i32 - 1) / omega;
        let signed = if j % 2 == 0 { weight } else { -weight };
        num += signed * partial_sums[m];
        den += signed;
        mass += weight.abs();
        binom *= (kf - j as f64) / (j as f64 + 1.0);
    }
    let v = num / den;
    if v.is_finite() {
        (v, mass / den.abs())
    } else {
        (last, 1.0)
    }
}

/// Highest-order Levin estimate whose amplified noise stays below `budget`.
fn stable_estimate(partial_sums: &[f64], max_order: usize, noise: f64, budget: f64) -> f64 {
    for order in (1..=max_order.min(partial_sums.len() - 1)).rev() {
        let (v, amplification) = levin_u_conditioned(partial_sums, order);
        if amplification * noise <= budget {
            return v;
        }
    }
    partial_sums[partial_sums.len() - 1]
}
