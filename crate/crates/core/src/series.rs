//! Laurent expansion of the Born integrand `g(r) = r V(r) J_nu^2(kr)` about
//! `r = 0` and extraction of its divergent part (the counterterm).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;
use crate::specfun::ln_gamma_signed;

/// Coefficients below this fraction of the absolute mass that produced them
/// are treated as exact cancellations.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Truncated Laurent series `sum_i c_i r^(min_exponent + i)` with every
/// exponent above `truncation_order` dropped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentSeries {
    min_exponent: i32,
    coefficients: Vec<f64>,
    truncation_order: i32,
}

impl LaurentSeries {
    pub fn zero(truncation_order: i32) -> Self {
        Self {
            min_exponent: truncation_order,
            coefficients: Vec::new(),
            truncation_order,
        }
    }

    /// Normalizes raw coefficients: near-cancellations are zeroed against
    /// their absolute mass, then leading zeros are trimmed.
    fn from_raw(min_exponent: i32, mut coefficients: Vec<f64>, mass: &[f64], truncation_order: i32) -> Self {
        for (c, m) in coefficients.iter_mut().zip(mass) {
            if c.abs() <= ZERO_THRESHOLD * m {
                *c = 0.0;
            }
        }
        let Some(first) = coefficients.iter().position(|&c| c != 0.0) else {
            return Self::zero(truncation_order);
        };
        let last = coefficients.iter().rposition(|&c| c != 0.0).unwrap_or(first);
        Self {
            min_exponent: min_exponent + first as i32,
            coefficients: coefficients[first..=last].to_vec(),
            truncation_order,
        }
    }

    pub fn min_exponent(&self) -> i32 {
        self.min_exponent
    }

    pub fn truncation_order(&self) -> i32 {
        self.truncation_order
    }

    /// Coefficient of `r^(min_exponent + i)` at index `i`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficient of `r^exponent`; zero for exponents not stored.
    pub fn coefficient(&self, exponent: i32) -> f64 {
        let i = exponent - self.min_exponent;
        if i < 0 {
            return 0.0;
        }
        self.coefficients.get(i as usize).copied().unwrap_or(0.0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(move |(i, &c)| (self.min_exponent + i as i32, c))
    }

    /// Partial sum of all stored terms.
    pub fn evaluate(&self, r: f64) -> f64 {
        self.terms().map(|(e, c)| c * r.powi(e)).sum()
    }

    /// Partial sum of the terms with exponent `>= 0`, evaluated by Horner.
    pub fn evaluate_regular(&self, r: f64) -> f64 {
        let start = (-self.min_exponent).max(0) as usize;
        if start >= self.coefficients.len() {
            return 0.0;
        }
        let mut acc = 0.0;
        for &c in self.coefficients[start..].iter().rev() {
            acc = acc * r + c;
        }
        let lowest = self.min_exponent + start as i32;
        acc * r.powi(lowest)
    }
}

/// One divergent term `coefficient / r^power` with `power >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub coefficient: f64,
    pub power: u32,
}

/// The negative-power part `D(r) = sum_n a_n / r^n` of the Born integrand,
/// powers strictly decreasing.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Counterterm {
    poles: Vec<Pole>,
}

impl Counterterm {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from `(a_n, n)` pairs; duplicates merge, zeros drop. A power-1
    /// entry is a logarithmic divergence and is rejected.
    pub fn from_poles<I>(poles: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, u32)>,
    {
        let mut out: Vec<Pole> = Vec::new();
        for (coefficient, power) in poles {
            match power {
                0 => {
                    return Err(Error::InvalidArgument(
                        "counterterm powers must be at least 2".into(),
                    ))
                }
                1 if coefficient != 0.0 => return Err(Error::LogDivergence { coefficient }),
                1 => continue,
                _ => {}
            }
            match out.iter_mut().find(|p| p.power == power) {
                Some(p) => p.coefficient += coefficient,
                None => out.push(Pole { coefficient, power }),
            }
        }
        out.retain(|p| p.coefficient != 0.0);
        out.sort_by_key(|p| std::cmp::Reverse(p.power));
        Ok(Self { poles: out })
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn powers(&self) -> Vec<u32> {
        self.poles.iter().map(|p| p.power).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// Coefficient of `1/r^power` (zero when absent).
    pub fn coefficient(&self, power: u32) -> f64 {
        self.poles
            .iter()
            .find(|p| p.power == power)
            .map_or(0.0, |p| p.coefficient)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            poles: self
                .poles
                .iter()
                .map(|p| Pole {
                    coefficient: factor * p.coefficient,
                    power: p.power,
                })
                .filter(|p| p.coefficient != 0.0)
                .collect(),
        }
    }

    /// `D(r)`.
    pub fn evaluate(&self, r: f64) -> f64 {
        self.poles
            .iter()
            .map(|p| p.coefficient / r.powi(p.power as i32))
            .sum()
    }
}

fn twice_order(nu: f64) -> Result<i32> {
    let two_nu = 2.0 * nu;
    if !(nu >= 0.0) || two_nu != two_nu.round() || two_nu > 1e6 {
        return Err(Error::UnsupportedOrder { nu });
    }
    Ok(two_nu as i32)
}

fn check_wave_number(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wave number must be positive and finite, got {k}"
        )));
    }
    Ok(())
}

/// Coefficients `t_j` of `J_nu(kr) = sum_j t_j r^(2j + nu)`, `j <= jmax`.
fn bessel_taylor(nu: f64, k: f64, jmax: usize) -> Vec<f64> {
    let half = 0.5 * k;
    let (ln_g, sign) = ln_gamma_signed(nu + 1.0).expect("nu + 1 > 0");
    let mut t = sign * (nu * half.ln() - ln_g).exp();
    let q = half * half;
    let mut out = Vec::with_capacity(jmax + 1);
    out.push(t);
    for j in 1..=jmax {
        let jf = j as f64;
        t *= -q / (jf * (jf + nu));
        out.push(t);
    }
    out
}

/// Taylor coefficients of `J_nu^2(kr)` in `r`, exponents `2 nu ..= order`,
/// as a Cauchy product of the ascending Bessel series.
pub fn bessel_sq_series(nu: f64, k: f64, order: i32) -> Result<LaurentSeries> {
    let two_nu = twice_order(nu)?;
    check_wave_number(k)?;
    if order < two_nu {
        return Err(Error::InvalidArgument(format!(
            "truncation order {order} is below the leading exponent {two_nu}"
        )));
    }
    let pmax = ((order - two_nu) / 2) as usize;
    let t = bessel_taylor(nu, k, pmax);
    let len = (order - two_nu) as usize + 1;
    let mut coefficients = vec![0.0; len];
    let mut mass = vec![0.0; len];
    for p in 0..=pmax {
        let s: f64 = (0..=p).map(|i| t[i] * t[p - i]).sum();
        coefficients[2 * p] = s;
        mass[2 * p] = s.abs();
    }
    Ok(LaurentSeries::from_raw(two_nu, coefficients, &mass, order))
}

/// Lowest exponent `2 nu + 1 - max(m)` of the integrand expansion.
pub fn integrand_min_exponent(v: &PowerLawPotential, nu: f64) -> Result<i32> {
    let two_nu = twice_order(nu)?;
    Ok(two_nu + 1 - v.max_exponent().unwrap_or(0) as i32)
}

/// `min_exponent + 2 * (number of negative grid exponents) + 4`.
pub fn default_truncation_order(v: &PowerLawPotential, nu: f64) -> Result<i32> {
    let min_exp = integrand_min_exponent(v, nu)?;
    let negatives = if min_exp < 0 { (-min_exp + 1) / 2 } else { 0 };
    Ok(min_exp + 2 * negatives + 4)
}

/// Laurent series of `r V(r) J_nu^2(kr)` through `r^order`.
pub fn integrand_series(v: &PowerLawPotential, k: f64, nu: f64, order: i32) -> Result<LaurentSeries> {
    let two_nu = twice_order(nu)?;
    check_wave_number(k)?;
    let Some(max_m) = v.max_exponent() else {
        return Ok(LaurentSeries::zero(order));
    };
    let min_exp = two_nu + 1 - max_m as i32;
    if order < min_exp {
        return Err(Error::InvalidArgument(format!(
            "truncation order {order} is below the leading exponent {min_exp}"
        )));
    }
    let bessel = bessel_sq_series(nu, k, order + max_m as i32 - 1)?;
    let len = (order - min_exp) as usize + 1;
    let mut coefficients = vec![0.0; len];
    let mut mass = vec![0.0; len];
    for term in v.terms() {
        let shift = 1 - term.exponent as i32;
        for (e, c) in bessel.terms() {
            let out = e + shift;
            if out > order {
                break;
            }
            let i = (out - min_exp) as usize;
            let contribution = term.coefficient * c;
            coefficients[i] += contribution;
            mass[i] += contribution.abs();
        }
    }
    Ok(LaurentSeries::from_raw(min_exp, coefficients, &mass, order))
}

/// All terms of exponent `<= -2`. A nonzero `r^-1` term is a logarithmic
/// divergence and is rejected.
pub fn counterterm(series: &LaurentSeries) -> Result<Counterterm> {
    if series.truncation_order() < -1 {
        return Err(Error::InvalidArgument(format!(
            "series truncated at r^{} cannot expose the r^-1 term",
            series.truncation_order()
        )));
    }
    let log_term = series.coefficient(-1);
    if log_term != 0.0 {
        return Err(Error::LogDivergence {
            coefficient: log_term,
        });
    }
    Counterterm::from_poles(
        series
            .terms()
            .filter(|&(e, _)| e <= -2)
            .map(|(e, c)| (c, (-e) as u32)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_order_square_leading_terms() {
        let k = 1.7;
        let s = bessel_sq_series(0.5, k, 7).unwrap();
        assert_eq!(s.min_exponent(), 1);
        assert!(rel(s.coefficient(1), 2.0 * k / PI) < 1e-14);
        assert!(rel(s.coefficient(3), -2.0 * k.powi(3) / (3.0 * PI)) < 1e-14);
        // Only odd exponents for 2 nu = 1.
        assert_eq!(s.coefficient(2), 0.0);
        assert_eq!(s.coefficient(4), 0.0);
    }

    #[test]
    fn half_order_square_matches_finite_differences() {
        // 2 sin^2(kr) / (pi k r) = (2k/pi) r + c3 r^3 + ...; recover c1, c3
        // from samples of the closed form.
        let k = 0.9;
        let f = |r: f64| 2.0 * (k * r).sin().powi(2) / (PI * k * r);
        let h = 1e-2;
        // f(r)/r = c1 + c3 r^2 + c5 r^4 + ...; Richardson on two step sizes.
        let q = |r: f64| f(r) / r;
        let c1 = (4.0 * q(h / 2.0) - q(h)) / 3.0;
        let c3 = (q(h) - q(h / 2.0)) / (h * h - h * h / 4.0);
        let s = bessel_sq_series(0.5, k, 5).unwrap();
        assert!(rel(s.coefficient(1), c1) < 1e-8);
        assert!(rel(s.coefficient(3), c3) < 1e-4);
    }

    #[test]
    fn square_series_reproduces_the_function() {
        for nu in [0.0, 0.5, 1.0, 2.5, 4.0] {
            let k = 1.3;
            let s = bessel_sq_series(nu, k, 60).unwrap();
            for r in [0.05, 0.4, 1.2] {
                let j = bessel_j(nu, k * r).unwrap();
                assert!((s.evaluate(r) - j * j).abs() < 1e-14, "nu {nu} r {r}");
            }
        }
    }

    #[test]
    fn tiny_wave_number_flattens_coefficients() {
        let s = bessel_sq_series(0.5, 1e-30, 9).unwrap();
        assert!(s.coefficients().iter().all(|c| c.abs() < 1e-29));
    }

    #[test]
    fn non_half_integer_order_is_unsupported() {
        assert!(matches!(bessel_sq_series(0.3, 1.0, 4), Err(Error::UnsupportedOrder { .. })));
        let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
        assert!(matches!(integrand_series(&v, 1.0, 1.25, 4), Err(Error::UnsupportedOrder { .. })));
    }

    #[test]
    fn lennard_jones_pole_coefficients() {
        let (eta, alpha, beta, k) = (2.0, 3.0, 0.5, 1.3);
        let v = PowerLawPotential::lj12(eta, alpha, beta);
        let order = default_truncation_order(&v, 0.5).unwrap();
        assert_eq!(order, 4);
        let s = integrand_series(&v, k, 0.5, order).unwrap();
        assert_eq!(s.min_exponent(), -10);
        let ae = alpha * eta;
        let be = beta * eta;
        assert!(rel(s.coefficient(-10), 2.0 * ae * k / PI) < 1e-13);
        assert!(
            rel(
                s.coefficient(-4),
                -(2.0 * ae * k.powi(7) / (315.0 * PI) + 4.0 * be * k / PI)
            ) < 1e-13
        );
        let ct = counterterm(&s).unwrap();
        assert_eq!(ct.powers(), vec![10, 8, 6, 4, 2]);
    }

    #[test]
    fn unit_lennard_jones_counterterm() {
        let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
        let s = integrand_series(&v, 1.0, 0.5, 4).unwrap();
        let ct = counterterm(&s).unwrap();
        assert_eq!(ct.powers(), vec![10, 8, 6, 4, 2]);
        assert!(rel(ct.coefficient(10), 2.0 / PI) < 1e-14);
    }

    #[test]
    fn zero_potential_gives_zero_series() {
        let s = integrand_series(&PowerLawPotential::zero(), 1.0, 0.5, 4).unwrap();
        assert!(s.is_zero());
        assert!(counterterm(&s).unwrap().is_empty());
    }

    #[test]
    fn regular_series_has_empty_counterterm() {
        // 1/r^3 at l = 1: r * r^-3 * r^3 = r^1, nothing divergent.
        let v = PowerLawPotential::new([(1.0, 3)]).unwrap();
        let s = integrand_series(&v, 1.0, 1.5, 6).unwrap();
        assert_eq!(s.min_exponent(), 1);
        assert!(counterterm(&s).unwrap().is_empty());
        let s = bessel_sq_series(0.0, 1.0, 6).unwrap();
        assert_eq!(s.min_exponent(), 0);
        assert!(counterterm(&s).unwrap().is_empty());
    }

    #[test]
    fn odd_exponent_is_log_divergent() {
        // s wave: r * r^-5 * r = r^-3 + c r^-1 + ...
        let v = PowerLawPotential::new([(1.0, 5)]).unwrap();
        let s = integrand_series(&v, 1.0, 0.5, 3).unwrap();
        assert!(matches!(counterterm(&s), Err(Error::LogDivergence { .. })));
        assert!(matches!(
            Counterterm::from_poles([(1.0, 3), (0.5, 1)]),
            Err(Error::LogDivergence { .. })
        ));
    }

    #[test]
    fn exact_cancellation_is_not_a_spurious_pole() {
        // Two terms that only differ in order of summation still cancel.
        let v = PowerLawPotential::new([(1.0, 12), (-2.0, 6)]).unwrap();
        let w = v.scale(-1.0);
        let s = integrand_series(&v.add(&w), 1.0, 0.5, 4).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn regular_part_matches_direct_subtraction_at_moderate_radius() {
        let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
        let k = 1.0;
        let s = integrand_series(&v, k, 0.5, 40).unwrap();
        let ct = counterterm(&s).unwrap();
        for r in [0.6, 1.0, 1.5] {
            let j = bessel_j(0.5, k * r).unwrap();
            let direct = r * v.evaluate(r).unwrap() * j * j - ct.evaluate(r);
            let series = s.evaluate_regular(r);
            assert!((direct - series).abs() < 1e-11, "r {r}: {direct} vs {series}");
        }
    }
}
