//! Gamma function on the whole real line and overflow-safe Gamma ratios.

// Tabulated constants keep their published digits.
#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Distance from a non-positive integer below which an argument is a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

// Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.).
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Exact factorials are used for small positive integers.
const FACTORIAL_TABLE_LEN: usize = 23;

/// `true` when `x` is within [`POLE_TOLERANCE`] of 0, -1, -2, ...
pub fn is_nonpositive_integer(x: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() < POLE_TOLERANCE
}

/// `sin(pi x)` with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn ln_gamma_positive(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut y = x;
    let tmp = x + LANCZOS_G;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_C0;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_2PI * ser / x).ln()
}

fn small_factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `ln |Gamma(x)|` and the sign of `Gamma(x)`.
///
/// Fails with [`Error::PoleArgument`] at non-positive integers.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(x) {
        return Err(Error::PoleArgument { x });
    }
    if x >= 0.5 {
        return Ok((ln_gamma_positive(x), 1.0));
    }
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x), and Gamma(1 - x) > 0 here.
    let s = sin_pi(x);
    let ln = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    Ok((ln, s.signum()))
}

/// Gamma function for real arguments. Negative non-integer arguments go
/// through the reflection identity.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidArgument("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::PoleArgument { x });
    }
    if x < 0.5 {
        return Ok(PI / (sin_pi(x) * gamma(1.0 - x)?));
    }
    if x == x.round() && (x as usize) < FACTORIAL_TABLE_LEN {
        return Ok(small_factorial(x as usize - 1));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    Ok(ln_gamma_positive(x).exp())
}

/// Outcome of `Gamma(a) / Gamma(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaRatioResult {
    /// Ratio value; `0` when `is_zero`, `NaN` when `is_pole`.
    pub value: f64,
    pub is_pole: bool,
    pub is_zero: bool,
}

/// `Gamma(a) / Gamma(b)` in log space with explicit sign bookkeeping.
///
/// Poles and zeros are reported through the status flags. When both
/// arguments sit on poles the ratio of residues is returned, which is the
/// common limit along any shift `a + t, b + t`.
pub fn gamma_ratio(a: f64, b: f64) -> GammaRatioResult {
    match (is_nonpositive_integer(a), is_nonpositive_integer(b)) {
        (true, false) => GammaRatioResult {
            value: f64::NAN,
            is_pole: true,
            is_zero: false,
        },
        (false, true) => GammaRatioResult {
            value: 0.0,
            is_pole: false,
            is_zero: true,
        },
        (true, true) => {
            // Res Gamma at -p is (-1)^p / p!.
            let p = -a.round();
            let q = -b.round();
            let magnitude = (ln_gamma_positive(q + 1.0) - ln_gamma_positive(p + 1.0)).exp();
            let sign = if (p - q) as i64 % 2 == 0 { 1.0 } else { -1.0 };
            GammaRatioResult {
                value: sign * magnitude,
                is_pole: false,
                is_zero: false,
            }
        }
        (false, false) => {
            // Both calls are infallible off the poles.
            let (la, sa) = ln_gamma_signed(a).expect("checked above");
            let (lb, sb) = ln_gamma_signed(b).expect("checked above");
            GammaRatioResult {
                value: sa * sb * (la - lb).exp(),
                is_pole: false,
                is_zero: false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_at_simple_points() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert_eq!(gamma(6.0).unwrap(), 120.0);
    }

    #[test]
    fn gamma_negative_half_integer_by_downward_recurrence() {
        // Gamma(x) = Gamma(x + 1) / x, from Gamma(0.5) down to -4.5.
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x > -4.5 {
            x -= 1.0;
            g /= x;
        }
        assert!(rel(g, PI.sqrt() / -29.53125) < 1e-15);
        assert!(rel(gamma(-4.5).unwrap(), g) < 1e-13);
    }

    #[test]
    fn gamma_poles_are_errors() {
        for x in [0.0, -1.0, -4.0, -4.0 + 1e-13, -17.0] {
            assert!(matches!(gamma(x), Err(Error::PoleArgument { .. })), "{x}");
        }
        assert!(gamma(-4.0 + 1e-9).is_ok());
    }

    #[test]
    fn gamma_matches_factorials_and_known_values() {
        assert!(rel(gamma(11.0).unwrap(), 3_628_800.0) < 1e-15);
        // Gamma(50) = 49!
        assert!(rel(gamma(50.0).unwrap(), 6.082_818_640_342_675e62) < 1e-13);
        // Gamma(1/3), Gamma(25.5) reference values.
        assert!(rel(gamma(1.0 / 3.0).unwrap(), 2.678_938_534_707_747_6) < 1e-13);
        let g255 = (1..=25).fold(PI.sqrt(), |acc, j| acc * (j as f64 - 0.5));
        assert!(rel(gamma(25.5).unwrap(), g255) < 1e-13);
    }

    #[test]
    fn ratio_examples() {
        let r = gamma_ratio(-4.5, 6.5);
        assert!(!r.is_pole && !r.is_zero);
        assert!(rel(r.value, -2048.0 / 9_823_275.0) < 1e-13);
        // -63 pi / 1024 times the ratio is the s-wave alpha coefficient.
        assert!(rel(-63.0 * PI / 1024.0 * r.value, 2.0 * PI / 155_925.0) < 1e-13);

        let r = gamma_ratio(-1.5, 3.5);
        assert!(rel(r.value, 32.0 / 45.0) < 1e-13);

        let r = gamma_ratio(-4.0, 3.0);
        assert!(r.is_pole && !r.is_zero);
        let r = gamma_ratio(3.0, -4.0);
        assert!(r.is_zero && !r.is_pole && r.value == 0.0);
    }

    #[test]
    fn ratio_of_two_poles_is_residue_ratio() {
        // lim Gamma(-4 + t) / Gamma(-1 + t) = 1 / ((-4)(-3)(-2)) = -1/24.
        let r = gamma_ratio(-4.0, -1.0);
        assert!(!r.is_pole && !r.is_zero);
        assert!(rel(r.value, -1.0 / 24.0) < 1e-14);
        let t = 1e-7;
        let approx = gamma(-4.0 + t).unwrap() / gamma(-1.0 + t).unwrap();
        assert!(rel(r.value, approx) < 1e-5);
    }

    #[test]
    fn ratio_survives_overflowing_arguments() {
        // Gamma(200.5) / Gamma(200) ~ sqrt(200) (1 - 1/(8*200)).
        let r = gamma_ratio(200.5, 200.0);
        assert!(r.value.is_finite());
        let expected = 200f64.sqrt() * (1.0 - 1.0 / 1600.0 + 1.0 / (128.0 * 40_000.0));
        assert!(rel(r.value, expected) < 1e-9);
    }
}
