//! Sine and cosine integrals.
//!
//! Power series for `|x| <= 4`; above that the auxiliary functions `f`, `g`
//! (with `Si(x) = pi/2 - f cos x - g sin x`, `Ci(x) = f sin x - g cos x`)
//! come from the continued fraction of `E1(ix)`.

// Tabulated constants keep their published digits.
#![allow(clippy::excessive_precision)]

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

const SERIES_MAX: f64 = 4.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;

/// `Si(x) = \int_0^x sin t / t dt`.
pub fn sin_integral(x: f64) -> f64 {
    if x < 0.0 {
        return -sin_integral(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x <= SERIES_MAX {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for k in 1..60 {
            let n = (2 * k) as f64;
            term *= -x2 / (n * (n + 1.0));
            let contribution = term / (n + 1.0);
            sum += contribution;
            if contribution.abs() < EPS * sum.abs() {
                break;
            }
        }
        return sum;
    }
    if x.is_infinite() {
        return FRAC_PI_2;
    }
    let (f, g) = auxiliary(x);
    let (s, c) = x.sin_cos();
    FRAC_PI_2 - f * c - g * s
}

/// `Ci(x) = gamma + ln x + \int_0^x (cos t - 1)/t dt` for `x > 0`.
pub fn cos_integral(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    if x <= SERIES_MAX {
        let x2 = x * x;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            let n = (2 * k) as f64;
            term *= -x2 / ((n - 1.0) * n);
            let contribution = term / n;
            sum += contribution;
            if contribution.abs() < EPS * sum.abs() {
                break;
            }
        }
        return EULER_GAMMA + x.ln() + sum;
    }
    let (f, g) = auxiliary(x);
    let (s, c) = x.sin_cos();
    f * s - g * c
}

/// Auxiliary functions `(f(x), g(x))` for `x > 0`.
///
/// `E1(ix) e^{ix} = g(x) - i f(x)`, evaluated by modified Lentz.
pub fn auxiliary(x: f64) -> (f64, f64) {
    const FPMIN: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / FPMIN, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    (-h.im, h.re)
}
