//! Dimensional renormalization.
//!
//! For one term `c / r^m` the n-dimensional Born integral has the
//! Weber-Schafheitlin closed form
//!
//! ```text
//! -(pi/2) c \int_0^\infty r^(1-m) J_nu^2(kr) dr
//!     = -(pi/2) c k^(m-2) Gamma(m-1) Gamma(nu - (m-2)/2)
//!       / (2^(m-1) Gamma(m/2)^2 Gamma(nu + m/2))
//! ```
//!
//! which converges only for `2 nu + 2 > m - 2`, but is analytic in `nu`
//! (hence in `n`) away from the Gamma poles. Evaluating it at the physical
//! dimension is the renormalized phase shift.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;
use crate::specfun::{gamma, gamma_ratio, ln_gamma_signed};
use crate::types::{DimregTerm, Diagnostics, PhaseShiftResult, ScatteringConfig, Scheme};

/// `Gamma(m-1) / (2^(m-1) Gamma(m/2)^2)`.
fn exponent_prefactor(m: u32) -> f64 {
    let mf = m as f64;
    if m <= 120 {
        let g = gamma(0.5 * mf).expect("m/2 > 0");
        gamma(mf - 1.0).expect("m - 1 > 0") / (2f64.powi(m as i32 - 1) * g * g)
    } else {
        let (a, _) = ln_gamma_signed(mf - 1.0).expect("m - 1 > 0");
        let (b, _) = ln_gamma_signed(0.5 * mf).expect("m/2 > 0");
        (a - (mf - 1.0) * std::f64::consts::LN_2 - 2.0 * b).exp()
    }
}

fn term_record(c: f64, m: u32, k: f64, nu: f64) -> Result<DimregTerm> {
    if m < 3 {
        return Err(Error::InvalidExponent {
            m: m as i64,
            reason: "power-law exponents must be at least 3",
        });
    }
    let mf = m as f64;
    let numerator_argument = nu - 0.5 * (mf - 2.0);
    let denominator_argument = nu + 0.5 * mf;
    let ratio = gamma_ratio(numerator_argument, denominator_argument);
    if ratio.is_pole {
        return Err(Error::DimensionalPole {
            exponent: m,
            argument: numerator_argument,
        });
    }
    let value = if ratio.is_zero {
        0.0
    } else {
        -FRAC_PI_2 * c * k.powi(m as i32 - 2) * exponent_prefactor(m) * ratio.value
    };
    Ok(DimregTerm {
        exponent: m,
        coefficient: c,
        numerator_argument,
        denominator_argument,
        ratio,
        value,
    })
}

/// Closed-form phase shift of the single term `c / r^m` at Bessel order `nu`.
pub fn term_phase_shift_dim(c: f64, m: u32, k: f64, nu: f64) -> Result<f64> {
    term_record(c, m, k, nu).map(|t| t.value)
}

/// Sum of the term closed forms at the configured (real) dimension.
pub fn phase_shift_dimreg(v: &PowerLawPotential, cfg: &ScatteringConfig) -> Result<PhaseShiftResult> {
    let terms = v
        .terms()
        .iter()
        .map(|t| term_record(t.coefficient, t.exponent, cfg.k(), cfg.nu()))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseShiftResult {
        value: terms.iter().map(|t| t.value).sum(),
        scheme: Scheme::Dimreg,
        error_estimate: 0.0,
        diagnostics: Diagnostics::Dimreg { terms },
    })
}
