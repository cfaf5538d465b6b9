//! Bessel functions of the first kind, `J_nu(x)` for real `nu >= 0`, `x >= 0`.
//!
//! Evaluation regimes:
//!
//! - half-integer orders with `x >= nu`: closed trigonometric forms for
//!   orders 1/2 and 3/2, upward recurrence (stable above the turning point)
//!   for higher orders;
//! - `x <= 2` or `x^2 <= 4 (nu + 1)`: ascending power series, where the
//!   alternating terms lose at most a factor of `e` to cancellation;
//! - `x >= max(30, nu^2)`: Hankel large-argument expansion;
//! - everything else: Steed's method (continued fractions CF1 and CF2 with
//!   the Wronskian normalization), which is accurate wherever the series
//!   cancels badly and the asymptotic expansion has not converged yet.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma_signed;

pub const MAX_ORDER: f64 = 50.0;
pub const MAX_ARGUMENT: f64 = 1e6;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-290;
const MAX_CF_ITERATIONS: usize = 1_000_000;

/// `J_nu(x)` on the envelope `0 <= nu <= 50`, `0 <= x <= 1e6`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(0.0..=MAX_ORDER).contains(&nu) || !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::OutOfEnvelope { nu, x });
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if let Some(l) = half_integer_index(nu) {
        if x >= nu {
            return Ok(half_integer(l, x));
        }
    }
    if x <= 2.0 || x * x <= 4.0 * (nu + 1.0) {
        return Ok(ascending_series(nu, x));
    }
    if x >= nu * nu && x >= 30.0 {
        if let Some(v) = hankel_asymptotic(nu, x) {
            return Ok(v);
        }
    }
    Ok(steed(nu, x))
}

/// `l` for `nu = l + 1/2`.
fn half_integer_index(nu: f64) -> Option<u32> {
    let l = nu - 0.5;
    (l >= 0.0 && l == l.round()).then_some(l as u32)
}

/// `J_{l+1/2}(x) = sqrt(2x/pi) j_l(x)` with spherical Bessel `j_l`.
fn half_integer(l: u32, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let scale = (FRAC_2_PI * x).sqrt();
    let j0 = s / x;
    if l == 0 {
        // sqrt(2/(pi x)) sin x, in the form that squares exactly.
        return (FRAC_2_PI / x).sqrt() * s;
    }
    let j1 = s / (x * x) - c / x;
    if l == 1 {
        return scale * j1;
    }
    let (mut prev, mut cur) = (j0, j1);
    for n in 1..l {
        let next = (2 * n + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    scale * cur
}

fn ascending_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let (ln_g, sign) = ln_gamma_signed(nu + 1.0).expect("nu + 1 > 0");
    let mut term = sign * (nu * half.ln() - ln_g).exp();
    let mut sum = term;
    let q = half * half;
    for j in 1..500 {
        let jf = j as f64;
        term *= -q / (jf * (jf + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Hankel expansion; `None` if the terms start growing before reaching
/// double precision.
fn hankel_asymptotic(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let a = term.abs();
        if a > last {
            break;
        }
        last = a;
        // term_k carries (-1)^floor(k/2) in P (even k) and Q (odd k).
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if a < 1e-17 {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    // chi = x - (nu/2 + 1/4) pi, expanded so that large x is not rounded first.
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    Some((FRAC_2_PI / x).sqrt() * (p * cos_chi - q * sin_chi))
}

/// Steed's method for `x >= 2`.
fn steed(nu: f64, x: f64) -> f64 {
    let nl = (nu - x + 1.5).floor().max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f = J'_nu / J_nu.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAX_CF_ITERATIONS {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // Downward recurrence from nu to xmu on an unnormalized pair.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + i q = (J' + i Y') / (J + i Y) at order xmu.
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 1..MAX_CF_ITERATIONS {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        let fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    rjl1 * (rjmu / rjl)
}
