use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Pole;
use crate::specfun::GammaRatioResult;

/// Wave number, partial wave and (continued) spatial dimension of a Born
/// phase-shift evaluation. The Bessel order is `nu = n/2 + l - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringConfig {
    k: f64,
    l: u32,
    n: f64,
    nu: f64,
}

impl ScatteringConfig {
    pub fn new(k: f64, l: u32, n: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "wave number must be positive and finite, got {k}"
            )));
        }
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "dimension must be positive and finite, got {n}"
            )));
        }
        Ok(Self {
            k,
            l,
            n,
            nu: 0.5 * n + l as f64 - 1.0,
        })
    }

    /// Physical three-dimensional configuration.
    pub fn three_d(k: f64, l: u32) -> Result<Self> {
        Self::new(k, l, 3.0)
    }

    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn n(&self) -> f64 {
        self.n
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(k, self.l, self.n)
    }

    pub(crate) fn require_three_d(&self) -> Result<()> {
        if self.n != 3.0 {
            return Err(Error::UnsupportedDimension { n: self.n });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Dimreg,
    Acont,
    Minsub,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Dimreg, Scheme::Acont, Scheme::Minsub];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Dimreg => "dimreg",
            Scheme::Acont => "acont",
            Scheme::Minsub => "minsub",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dimreg" => Ok(Scheme::Dimreg),
            "acont" => Ok(Scheme::Acont),
            "minsub" => Ok(Scheme::Minsub),
            other => Err(Error::Parse(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Per-term record of the dimensional closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimregTerm {
    pub exponent: u32,
    pub coefficient: f64,
    pub numerator_argument: f64,
    pub denominator_argument: f64,
    pub ratio: GammaRatioResult,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Diagnostics {
    Dimreg {
        terms: Vec<DimregTerm>,
    },
    Acont {
        eps: f64,
        counterterm_powers: Vec<u32>,
        /// Subtracted `[0, eps]` integral, continued counterterm integral,
        /// and tail, each with the `-pi/2` prefactor applied.
        subtracted: f64,
        counterterm_integral: f64,
        tail: f64,
        evaluations: usize,
    },
    Minsub {
        eps_grid: Vec<f64>,
        pole_coefficients: Vec<Pole>,
        /// `F(eps_i)` = cutoff phase shift minus pole part.
        finite_parts: Vec<f64>,
        extrapolation_order: usize,
        /// Neville table, row `i` holds the extrapolants that end at grid point `i`.
        table: Vec<Vec<f64>>,
    },
}

/// Renormalized phase shift from one scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseShiftResult {
    /// Radians.
    pub value: f64,
    pub scheme: Scheme,
    /// Zero for the closed-form scheme.
    pub error_estimate: f64,
    pub diagnostics: Diagnostics,
}
