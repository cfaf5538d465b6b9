//! Real special functions needed by the schemes. All of them are pure.

mod bessel;
mod gamma;
mod sici;

pub use bessel::{bessel_j, MAX_ARGUMENT, MAX_ORDER};
pub use gamma::{
    gamma, gamma_ratio, is_nonpositive_integer, ln_gamma_signed, sin_pi, GammaRatioResult,
    POLE_TOLERANCE,
};
pub use sici::{auxiliary, cos_integral, sin_integral};
