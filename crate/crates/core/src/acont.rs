//! Analytic-continuation renormalization.
//!
//! ```text
//! delta = -(pi/2) \int_0^eps [g - D]                     (finite)
//!       + sum_n (-(pi/2) a_n) eps^(1-n) / (1-n)          (continued \int_0^eps D)
//!       - (pi/2) \int_eps^\infty g                       (convergent tail)
//! ```
//!
//! with `g(r) = r V(r) J_nu^2(kr)` and `D` its negative-power Laurent part.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;
use crate::quadrature::{integrate_adaptive_with, integrate_tail_with, QuadOptions, TailOptions};
use crate::series::{counterterm, default_truncation_order, integrand_series, Counterterm, LaurentSeries};
use crate::specfun::bessel_j;
use crate::types::{Diagnostics, PhaseShiftResult, ScatteringConfig, Scheme};

/// Below `k r = SERIES_SWITCH` the subtracted integrand is evaluated from the
/// regular part of the Laurent series instead of `g - D`.
pub const SERIES_SWITCH: f64 = 2.0;

/// Highest regular exponent kept for the near-origin remainder.
const REGULAR_ORDER: i32 = 48;

/// Agreement required between the two evaluations at the seam, relative to
/// the size of the terms being subtracted.
const SEAM_TOLERANCE: f64 = 1e-9;

/// `sum_n a_n eps^(1-n) / (1-n)`: the `s -> 1` continuation of
/// `\int_0^eps a_n r^(-n s) dr`.
pub fn counterterm_integral(ct: &Counterterm, eps: f64) -> f64 {
    ct.poles()
        .iter()
        .map(|p| {
            let n = p.power as i32;
            p.coefficient * eps.powi(1 - n) / (1 - n) as f64
        })
        .sum()
}

/// Optional knobs for [`phase_shift_ac_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct AcontOptions {
    /// Split point; `1/k` when `None`.
    pub eps: Option<f64>,
    /// Absolute tolerance shared by the two quadratures.
    pub tol: f64,
}

impl Default for AcontOptions {
    fn default() -> Self {
        Self { eps: None, tol: 1e-10 }
    }
}

/// Born integrand `r V(r) J_nu^2(kr)`.
pub(crate) fn born_integrand(v: &PowerLawPotential, k: f64, nu: f64, r: f64) -> f64 {
    let j = bessel_j(nu, k * r).unwrap_or(f64::NAN);
    r * v.eval_unchecked(r) * j * j
}

struct Subtracted<'a> {
    v: &'a PowerLawPotential,
    k: f64,
    nu: f64,
    ct: &'a Counterterm,
    regular: &'a LaurentSeries,
}

impl Subtracted<'_> {
    fn direct(&self, r: f64) -> f64 {
        born_integrand(self.v, self.k, self.nu, r) - self.ct.evaluate(r)
    }

    fn eval(&self, r: f64) -> f64 {
        if self.k * r < SERIES_SWITCH {
            self.regular.evaluate_regular(r)
        } else {
            self.direct(r)
        }
    }

    fn check_seam(&self, eps: f64) -> Result<()> {
        let r = SERIES_SWITCH / self.k;
        if r > eps {
            return Ok(());
        }
        let series = self.regular.evaluate_regular(r);
        let direct = self.direct(r);
        let scale = self
            .ct
            .poles()
            .iter()
            .map(|p| (p.coefficient / r.powi(p.power as i32)).abs())
            .sum::<f64>()
            .max(series.abs())
            .max(f64::MIN_POSITIVE);
        if (series - direct).abs() > SEAM_TOLERANCE * scale {
            return Err(Error::SeamMismatch { r, series, direct });
        }
        Ok(())
    }
}

/// Analytic-continuation phase shift at `n = 3` with split point `eps`.
pub fn phase_shift_ac(
    v: &PowerLawPotential,
    cfg: &ScatteringConfig,
    eps: f64,
    tol: f64,
) -> Result<PhaseShiftResult> {
    phase_shift_ac_with(v, cfg, &AcontOptions { eps: Some(eps), tol })
}

pub fn phase_shift_ac_with(
    v: &PowerLawPotential,
    cfg: &ScatteringConfig,
    opts: &AcontOptions,
) -> Result<PhaseShiftResult> {
    cfg.require_three_d()?;
    let k = cfg.k();
    let nu = cfg.nu();
    let eps = opts.eps.unwrap_or(1.0 / k);
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("split point must be positive, got {eps}")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", opts.tol)));
    }

    // Detect r^-1 with the default order, then extend for the remainder.
    let order = default_truncation_order(v, nu)?;
    let ct = counterterm(&integrand_series(v, k, nu, order)?)?;
    let regular = integrand_series(v, k, nu, order.max(REGULAR_ORDER))?;

    let sub = Subtracted { v, k, nu, ct: &ct, regular: &regular };
    sub.check_seam(eps)?;

    let inner = integrate_adaptive_with(
        |r| sub.eval(r),
        0.0,
        eps,
        &QuadOptions {
            abs_tol: opts.tol / (3.0 * FRAC_PI_2),
            rel_tol: 1e-14,
            ..QuadOptions::default()
        },
    )?;
    let tail = integrate_tail_with(
        |r| born_integrand(v, k, nu, r),
        eps,
        PI / (2.0 * k),
        &TailOptions {
            tol: opts.tol / (3.0 * FRAC_PI_2),
            ..TailOptions::default()
        },
    )?;

    let scaled = ct.scaled(-FRAC_PI_2);
    let subtracted = -FRAC_PI_2 * inner.value;
    let continued = counterterm_integral(&scaled, eps);
    let tail_value = -FRAC_PI_2 * tail.value;
    let continued_roundoff = f64::EPSILON
        * scaled
            .poles()
            .iter()
            .map(|p| (p.coefficient * eps.powi(1 - p.power as i32)).abs())
            .sum::<f64>();

    Ok(PhaseShiftResult {
        value: subtracted + continued + tail_value,
        scheme: Scheme::Acont,
        error_estimate: FRAC_PI_2 * (inner.error_estimate + tail.error_estimate) + continued_roundoff,
        diagnostics: Diagnostics::Acont {
            eps,
            counterterm_powers: ct.powers(),
            subtracted,
            counterterm_integral: continued,
            tail: tail_value,
            evaluations: inner.evaluations + tail.evaluations,
        },
    })
}
