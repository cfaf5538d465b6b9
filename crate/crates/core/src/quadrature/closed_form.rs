use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;
use crate::specfun::sin_integral;

/// Closed form of `-(pi/2) \int_eps^\infty r V(r) J_{1/2}^2(kr) dr` for
/// `V = c12 / r^12 + c6 / r^6`, written with `alpha eta = c12` and
/// `beta eta = -c6 / 2`.
///
/// The `beta` contributions to the `1/eps^2` (sine) and `1/eps` (cosine)
/// brackets carry a plus sign; this is the form that agrees with direct
/// quadrature.
pub fn tail_closed_form_swave(v: &PowerLawPotential, k: f64, eps: f64) -> Result<f64> {
    if v.exponents().iter().any(|&m| m != 12 && m != 6) {
        return Err(Error::UnsupportedShape {
            exponents: v.exponents(),
        });
    }
    if !(k > 0.0) || !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "closed-form tail needs k > 0 and eps > 0, got k = {k}, eps = {eps}"
        )));
    }
    let ae = v.coefficient(12);
    let be = -0.5 * v.coefficient(6);
    let e = eps;
    let x = 2.0 * k * e;
    let (s2, c2) = x.sin_cos();
    let k2 = k * k;
    let k3 = k2 * k;
    let k4 = k2 * k2;
    let k5 = k4 * k;
    let k6 = k4 * k2;
    let k7 = k6 * k;
    let k8 = k4 * k4;
    let k9 = k8 * k;
    let k10 = k8 * k2;

    let mut value = -ae / (22.0 * k * e.powi(11)) + be / (5.0 * k * e.powi(5))
        - sin_integral(x) * (4.0 * ae * k10 / 155_925.0 + 4.0 * be * k4 / 15.0)
        + 2.0 * PI * ae * k10 / 155_925.0
        + 2.0 * PI * be * k4 / 15.0;

    value += s2
        * (-ae / (110.0 * e.powi(10)) + ae * k2 / (1980.0 * e.powi(8))
            - ae * k4 / (20_790.0 * e.powi(6))
            + (ae * k6 / 103_950.0 + be / 10.0) / e.powi(4)
            - (ae * k8 / 155_925.0 + be * k2 / 15.0) / e.powi(2));

    value += c2
        * (ae / (22.0 * k * e.powi(11)) - ae * k / (495.0 * e.powi(9))
            + ae * k3 / (6930.0 * e.powi(7))
            - (ae * k5 / 51_975.0 + be / (5.0 * k)) / e.powi(5)
            + (ae * k7 / 155_925.0 + be * k / 15.0) / e.powi(3)
            - (2.0 * ae * k9 / 155_925.0 + 2.0 * be * k3 / 15.0) / e);

    Ok(value)
}
