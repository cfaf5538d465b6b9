//! Singular inverse-power-law potentials `V(r) = sum_i c_i r^(-m_i)`.
//!
//! `V` is the function that appears directly inside the Born integrand
//! `r V(r) J_nu^2(kr)`; the usual `2m/hbar^2` factor of the radial equation is
//! taken to be absorbed into the coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// One term `coefficient / r^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawTerm {
    pub coefficient: f64,
    pub exponent: u32,
}

/// Finite sum of power-law terms with distinct exponents `m >= 3`, stored in
/// decreasing exponent order with zero coefficients removed.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PowerLawPotential {
    terms: Vec<PowerLawTerm>,
}

pub const MIN_EXPONENT: i64 = 3;

impl PowerLawPotential {
    /// The zero potential.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from `(coefficient, exponent)` pairs. Duplicate exponents are
    /// merged by adding their coefficients.
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, i64)>,
    {
        let mut merged: BTreeMap<u32, f64> = BTreeMap::new();
        for (c, m) in terms {
            if m < MIN_EXPONENT {
                return Err(Error::InvalidExponent {
                    m,
                    reason: "power-law exponents must be at least 3",
                });
            }
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient of 1/r^{m} is not finite"
                )));
            }
            let m = u32::try_from(m).map_err(|_| Error::InvalidExponent {
                m,
                reason: "exponent too large",
            })?;
            *merged.entry(m).or_insert(0.0) += c;
        }
        let terms = merged
            .into_iter()
            .rev()
            .filter(|&(_, c)| c != 0.0)
            .map(|(exponent, coefficient)| PowerLawTerm {
                coefficient,
                exponent,
            })
            .collect();
        Ok(Self { terms })
    }

    /// `eta (alpha / r^12 - 2 beta / r^6)`.
    pub fn lj12(eta: f64, alpha: f64, beta: f64) -> Self {
        Self::new([(eta * alpha, 12), (-2.0 * eta * beta, 6)]).expect("fixed exponents are valid")
    }

    /// `eta 6/(m-6) (alpha / r^m - (beta/6) m / r^6)`, `m >= 7`.
    pub fn lj_general(eta: f64, alpha: f64, beta: f64, m: i64) -> Result<Self> {
        if m <= 6 {
            return Err(Error::InvalidExponent {
                m,
                reason: "general Lennard-Jones form needs m > 6",
            });
        }
        let d = (m - 6) as f64;
        // Prefactors first, so m = 12 reproduces lj12 bit for bit.
        Self::new([
            (eta * (6.0 / d) * alpha, m),
            (-(eta * (m as f64 / d)) * beta, 6),
        ])
    }

    pub fn terms(&self) -> &[PowerLawTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.exponent).collect()
    }

    /// Coefficient of `1/r^m` (zero when absent).
    pub fn coefficient(&self, m: u32) -> f64 {
        self.terms
            .iter()
            .find(|t| t.exponent == m)
            .map_or(0.0, |t| t.coefficient)
    }

    /// `V(r)` for `r > 0`.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::NonPositiveRadius { r });
        }
        Ok(self.eval_unchecked(r))
    }

    pub(crate) fn eval_unchecked(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient / r.powi(t.exponent as i32))
            .sum()
    }

    /// Merge of the two term lists.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|t| (t.coefficient, t.exponent as i64)),
        )
        .expect("terms of valid potentials are valid")
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|t| (factor * t.coefficient, t.exponent as i64)),
        )
        .expect("terms of valid potentials are valid")
    }
}

/// Written in the `terms:c/r^m,...` form the command line accepts, so a
/// printed potential parses back to itself. The zero potential prints `0`.
impl fmt::Display for PowerLawPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}/r^{}", t.coefficient, t.exponent))
            .collect();
        write!(f, "terms:{}", parts.join(","))
    }
}
