use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library.
///
/// Scheme-level failures are values, not panics: the harness records them per
/// scheme and keeps going.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma pole at non-positive integer argument {x}")]
    PoleArgument { x: f64 },

    #[error("Bessel J_{nu}({x}) is outside the supported envelope (nu <= 50, 0 <= x <= 1e6)")]
    OutOfEnvelope { nu: f64, x: f64 },

    #[error("invalid exponent {m}: {reason}")]
    InvalidExponent { m: i64, reason: &'static str },

    #[error("radius must be positive, got {r}")]
    NonPositiveRadius { r: f64 },

    #[error("Bessel order {nu} does not give an integer Laurent grid (2*nu must be a non-negative integer)")]
    UnsupportedOrder { nu: f64 },

    #[error("integrand has a nonzero r^-1 Laurent coefficient ({coefficient:e}); logarithmic divergence cannot be subtracted")]
    LogDivergence { coefficient: f64 },

    #[error("quadrature did not converge: value {value:e}, error estimate {error_estimate:e} after {evaluations} evaluations")]
    NoConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("closed-form tail needs a potential with exponents in {{12, 6}}, found {exponents:?}")]
    UnsupportedShape { exponents: Vec<u32> },

    #[error("dimensional continuation hits a Gamma pole for the 1/r^{exponent} term (Gamma({argument}))")]
    DimensionalPole { exponent: u32, argument: f64 },

    #[error("extrapolation unstable: {reason}")]
    ExtrapolationUnstable { reason: String },

    #[error("numeric schemes are restricted to n = 3, got n = {n}")]
    UnsupportedDimension { n: f64 },

    #[error("series remainder and direct subtraction disagree at r = {r}: {series:e} vs {direct:e}")]
    SeamMismatch { r: f64, series: f64, direct: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in the `status` field of reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PoleArgument { .. } => "PoleArgument",
            Error::OutOfEnvelope { .. } => "OutOfEnvelope",
            Error::InvalidExponent { .. } => "InvalidExponent",
            Error::NonPositiveRadius { .. } => "NonPositiveRadius",
            Error::UnsupportedOrder { .. } => "UnsupportedOrder",
            Error::LogDivergence { .. } => "LogDivergence",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::UnsupportedShape { .. } => "UnsupportedShape",
            Error::DimensionalPole { .. } => "DimensionalPole",
            Error::ExtrapolationUnstable { .. } => "ExtrapolationUnstable",
            Error::UnsupportedDimension { .. } => "UnsupportedDimension",
            Error::SeamMismatch { .. } => "SeamMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}
